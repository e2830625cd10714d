#pragma once

#include <array>

#include "topomagic/mps.hpp"
#include "topomagic/partition.hpp"

namespace topomagic {

struct TeeReport {
  Geometry geometry = Geometry::quad;
  std::array<double, 4> values{};  // S_AB, S_BC, S_B, S_ABC in bits
  double s_topo = 0.0;             // S_AB + S_BC - S_B - S_ABC
};

TeeReport topological_ee(const Mps& psi, const PartitionSpec& partition,
                         std::size_t max_dimension = kDefaultRdmDimension);

}  // namespace topomagic

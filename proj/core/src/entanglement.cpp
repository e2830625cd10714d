#include "topomagic/entanglement.hpp"

#include "topomagic/errors.hpp"

namespace topomagic {

TeeReport topological_ee(const Mps& psi, const PartitionSpec& partition, std::size_t max_dimension) {
  if (partition.length != psi.length()) throw DimensionError("partition length does not match the state");
  TeeReport r;
  r.geometry = partition.geometry;
  const auto regions = partition.regions();
  for (std::size_t k = 0; k < 4; ++k) r.values[k] = subsystem_entropy(psi, regions[k], max_dimension);
  r.s_topo = r.values[0] + r.values[1] - r.values[2] - r.values[3];
  return r;
}

}  // namespace topomagic

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "topomagic/mps.hpp"
#include "topomagic/partition.hpp"
#include "topomagic/pauli.hpp"

namespace topomagic {

/// M_2 of the GHZ state with S(theta) on every site (bits).
double ghz_doped_sre(std::size_t length, double theta);

struct ProductSre {
  double full = 0.0;
  double subsystem = 0.0;
};
/// |+_theta>^L: full-state M_2 and mixed-state M_2 of an L_K-site region.
ProductSre product_doped_sre(std::size_t length, std::size_t region_size, double theta);

/// M_2 of the fully T-doped cluster state.
double cluster_doped_sre(std::size_t length);

/// Mixed-state M_2 of the fully T-doped cluster state on an L_K-site region:
/// (L_K - deficit) log2(4/3), deficit 2 for connected regions (and for the
/// quad ABC region), 4 for the disconnected quad BC region.
double cluster_doped_region_sre(std::size_t region_size, std::size_t deficit);

/// One cell of the fixed-point tables. Values may depend on the parity of L.
struct TableEntry {
  Geometry geometry;
  std::string quantity;  // "S_topo", "M_topo N_T=0", "M_topo N_T=1", "M_topo N_T=L"
  std::string state;     // "PM", "FM", "CL"
  double even_l = 0.0;
  double odd_l = 0.0;
  double value(std::size_t length) const { return length % 2 ? odd_l : even_l; }
};
std::vector<TableEntry> fixed_point_tables();

/// Windows behind the L=8 closed forms: quarters for quad, (2, 4, 2) for tri.
PartitionSpec tci_l8_partition(Geometry g);
/// Exact topological M_2 of the fully doped L=8 tri-critical Ising MPS.
double tci_l8_closed_form(double g, Geometry geometry);

/// Default edge-mode string: Z_0 X_1 X_3 ... X_c Z_{c+1}, the product of the
/// ZXZ stabilizers centred on odd sites.
PauliString default_edge_string(std::size_t length);
/// Re <psi|P|psi> for the given string.
double edge_correlator(const Mps& psi, const PauliString& p);

}  // namespace topomagic

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "topomagic/mps.hpp"
#include "topomagic/partition.hpp"
#include "topomagic/tensor.hpp"

namespace topomagic {

/// Pauli-vector MPS: the amplitude of string alpha is
///   exp(log_scale) * B_0^{alpha_0} ... B_{L-1}^{alpha_{L-1}} = <psi|P_alpha|psi>^order / d^(L*order/2).
/// Sites outside the region keep only the identity component (physical
/// extent 1); free sites have physical extent d^2.
struct PauliMps {
  std::size_t local_dim = 2;          // d of the underlying state
  std::vector<DenseTensor> tensors;   // (chi_l, d^2 or 1, chi_r)
  std::vector<bool> free;             // per-site restriction mask
  double log_scale = 0.0;
  int order = 1;

  std::size_t length() const { return tensors.size(); }
  std::size_t max_bond_dim() const;
  std::size_t region_size() const;
};

/// Builds B^alpha = sum_{s,s'} <s|P_alpha|s'> conj(A^s) (x) A^{s'} / sqrt(d).
/// Sites not in `region` (when given) keep only alpha = 0.
/// Throws ContractViolation unless psi has unit norm.
PauliMps build_pauli_mps(const Mps& psi, const std::optional<SiteSet>& region = std::nullopt);

/// Same vector, compressed under `policy` while it is built (never forms the
/// chi^2 bonds). The input may have any gauge; it must have unit norm.
struct PauliCompression;
PauliCompression build_compressed_pauli_mps(const Mps& psi, const std::optional<SiteSet>& region,
                                            const TruncationPolicy& policy);

/// Amplitude of one string (labels per site; masked sites must be 0).
cplx amplitude(const PauliMps& p, const std::vector<std::size_t>& labels);

/// log of <P|P> (natural log).
double log_norm_squared(const PauliMps& p);

struct PauliCompression {
  PauliMps state;
  double discarded_weight = 0.0;  // relative, summed over bonds
};
/// Orthogonalize left to right, then truncate right to left. Keeps the norm
/// of the input (kept singular values are rescaled).
PauliCompression compress(PauliMps p, const TruncationPolicy& policy);

struct ReplicaResult {
  PauliMps state;
  std::vector<double> discarded;  // per W application
};
/// n-1 applications of the diagonal operator W built from `p` (order 1),
/// each followed by compression.
ReplicaResult apply_replica(const PauliMps& p, int n, const TruncationPolicy& policy);

struct SreOptions {
  TruncationPolicy policy{64, 1e-12, true};
  double alarm = 1e-6;    // discarded weight that triggers a warning
  bool parallel = false;  // evaluate the four regions concurrently
};

struct RegionSre {
  double value = 0.0;       // bits
  double log2_norm1 = 0.0;  // log2 <P^K|P^K>
  double log2_normn = 0.0;  // log2 <P^K(n)|P^K(n)>
  double discarded = 0.0;   // largest discarded weight of any step
  std::size_t chi_p = 0;    // largest Pauli-MPS bond actually used
  std::vector<std::string> warnings;
};

/// Mixed-state SRE of `region` (whole chain when empty or full).
RegionSre subsystem_sre(const Mps& psi, const SiteSet& region, int n, const SreOptions& opt = {});
/// Pure-state SRE M_n in bits.
double full_state_sre(const Mps& psi, int n, const SreOptions& opt = {});

struct SreReport {
  Geometry geometry = Geometry::quad;
  int n = 2;
  std::size_t chi_p = 0;
  double cutoff = 0.0;
  std::array<double, 4> values{};     // AB, BC, B, ABC
  std::array<double, 4> discarded{};
  double m_topo = 0.0;                // -(AB + BC - B - ABC)
  std::vector<std::string> warnings;
};

SreReport topological_sre(const Mps& psi, const PartitionSpec& partition, int n, const SreOptions& opt = {});

}  // namespace topomagic

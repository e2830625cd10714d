#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "topomagic/pauli.hpp"
#include "topomagic/tensor.hpp"

namespace topomagic {

using SiteSet = std::vector<std::size_t>;

/// Open-boundary matrix product state. Site tensors have shape
/// (chi_left, d, chi_right) with unit boundary bonds. The represented vector
/// is exp(norm_log) times the contraction of the tensors.
class Mps {
 public:
  Mps() = default;
  Mps(std::size_t local_dim, std::vector<DenseTensor> tensors);

  /// Same single-site vector on every site.
  static Mps product(std::size_t length, std::span<const cplx> local_state);
  /// Normalized random state with bonds min(max_bond, d^k, d^(L-k)).
  static Mps random(std::size_t length, std::size_t local_dim, std::size_t max_bond,
                    std::mt19937_64& rng);

  std::size_t length() const noexcept { return tensors_.size(); }
  std::size_t local_dim() const noexcept { return local_dim_; }
  const DenseTensor& site(std::size_t i) const { return tensors_.at(i); }
  const std::vector<DenseTensor>& sites() const noexcept { return tensors_; }
  void set_site(std::size_t i, DenseTensor t);

  /// Bond extent after `cut` sites, cut in [0, L].
  std::size_t bond_dim(std::size_t cut) const;
  std::size_t max_bond_dim() const;

  std::optional<std::size_t> ortho_center() const noexcept { return center_; }
  double norm_log() const noexcept { return norm_log_; }

  // Low-level mutators used by the algorithms; they keep invariants loose.
  DenseTensor& mutable_site(std::size_t i) { return tensors_.at(i); }
  void set_ortho_center(std::optional<std::size_t> c) { center_ = c; }
  void set_norm_log(double v) { norm_log_ = v; }

 private:
  std::size_t local_dim_ = 2;
  std::vector<DenseTensor> tensors_;
  std::optional<std::size_t> center_;
  double norm_log_ = 0.0;
};

/// Mixed-canonical form with orthogonality center `center`. The norm stays in
/// the center tensor.
Mps canonicalize(Mps psi, std::size_t center);

/// Canonicalizes to site 0 and rescales to unit norm.
/// Throws DegenerateStateError for a zero-norm state.
Mps normalize(Mps psi);

struct CompressResult {
  Mps state;
  double discarded_weight = 0.0;  // summed over bonds, relative
};
/// SVD compression sweep; result has orthogonality center 0.
CompressResult compress(Mps psi, const TruncationPolicy& policy);

/// wa*a + wb*b by direct sum of the bonds (bond dimensions add).
Mps superpose(const Mps& a, const Mps& b, cplx wa = 1.0, cplx wb = 1.0);

/// Applies a d x d matrix on one site.
Mps apply_site_operator(Mps psi, std::size_t site, const RowMatrix& op);
/// diag(1, e^{i theta}) on a qubit site.
Mps apply_phase_gate(Mps psi, std::size_t site, double theta);
/// T = diag(1, e^{i pi/4}) on each listed site. Duplicate sites are rejected.
Mps dope_with_t_gates(Mps psi, std::span<const std::size_t> sites);

/// <a|b>, including both norm_log factors.
cplx overlap(const Mps& a, const Mps& b);
double norm(const Mps& psi);

/// <psi|P|psi> for a Pauli/Weyl string, by one left-to-right transfer sweep.
cplx expect_pauli(const Mps& psi, const PauliString& p);
/// <psi| prod_i O_i |psi> for arbitrary single-site operators.
cplx expect_product(const Mps& psi, std::span<const std::pair<std::size_t, RowMatrix>> ops);

/// Schmidt values across the bond after `cut` sites (cut in [1, L-1]),
/// descending, normalized to unit 2-norm.
std::vector<double> bond_spectrum(const Mps& psi, std::size_t cut);

/// von Neumann entropy in bits of a probability vector derived from Schmidt
/// values (p_k = s_k^2).
double entropy_bits_from_schmidt(std::span<const double> schmidt);

/// Entanglement entropy (bits) across the bond after `cut` sites.
double entanglement_entropy(const Mps& psi, std::size_t cut);

/// Default size limit for dense reduced density matrices (matrix dimension).
inline constexpr std::size_t kDefaultRdmDimension = 4096;

/// Reduced density matrix on `sites` (sorted, unique), basis ordered by site.
RowMatrix reduced_density_matrix(const Mps& psi, const SiteSet& sites);

/// von Neumann entropy (bits) of an arbitrary region. Boundary-anchored
/// regions use the bond spectrum; otherwise the smaller of region and
/// complement is contracted into a dense density matrix whose dimension must
/// not exceed `max_dimension` (CapacityError otherwise).
double subsystem_entropy(const Mps& psi, const SiteSet& region,
                         std::size_t max_dimension = kDefaultRdmDimension);

}  // namespace topomagic

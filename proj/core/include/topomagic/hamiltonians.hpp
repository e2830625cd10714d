#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topomagic/mpo.hpp"
#include "topomagic/mps.hpp"

namespace topomagic {

enum class ModelKind { tfim, cluster_ising, cluster_ising_disordered, tci, aklt };

ModelKind parse_model_kind(std::string_view text);
std::string to_string(ModelKind k);

/// Model parameters. Unused fields are ignored by a given kind.
///   tfim:                      -J sum Z Z - h sum X
///   cluster_ising:             +J sum Z X Z + h sum X
///   cluster_ising_disordered:  cluster_ising + sum_l Delta_l Z_l Z_{l+1}
///   tci:                       2(g^2-1) sum Z Z - (g+1)^2 sum X + (g-1)^2 sum Z X Z
///   aklt (spin 1):             (1-delta) sum [S.S + (S.S)^2/3] + delta sum (S^z)^2
struct ModelSpec {
  ModelKind kind = ModelKind::tfim;
  std::size_t length = 8;
  double j = 1.0;
  double h = 0.0;
  double disorder = 0.0;             // Delta (bound of |Delta_l|)
  std::uint64_t seed = 0;            // disorder realization seed
  std::vector<double> couplings;     // Delta_l, size L-1; sampled when empty
  double g = 0.0;
  double delta = 0.0;                // AKLT anisotropy

  std::size_t local_dim() const { return kind == ModelKind::aklt ? 3 : 2; }
  /// Throws ConfigError on invalid values.
  void validate() const;
};

Mpo build_mpo(const ModelSpec& spec);

/// A conserved operator whose largest eigenvalue labels the intended sector
/// at (near-)degenerate points; DMRG subtracts eps times it.
std::optional<Mpo> symmetry_tilt(const ModelSpec& spec);

/// Delta_l ~ U[-Delta, Delta], L-1 values, deterministic in `seed`.
std::vector<double> sample_disorder(double bound, std::size_t length, std::uint64_t seed);

Mps ghz_state(std::size_t length);
Mps product_plus_state(std::size_t length);
/// Symmetrized cluster state built from the reference MPS; L >= 4.
Mps cluster_state(std::size_t length);
/// Exact tri-critical Ising MPS (bond dimension 2), psi ~ tr(A^{s_1}...A^{s_L}). With `doped`, every site
/// carries a T gate. Even L only.
Mps tci_ground_state(std::size_t length, double g, bool doped);

/// Spin-1 operators in the basis m = +1, 0, -1.
/// AKLT valence-bond state with the two edge spins bound into a singlet,
/// tr(A^{s_1} ... A^{s_L}); the symmetric (+1, +1) sector of the pi rotations.
Mps aklt_state(std::size_t length);

RowMatrix spin1_sx();
RowMatrix spin1_sy();
RowMatrix spin1_sz();

}  // namespace topomagic

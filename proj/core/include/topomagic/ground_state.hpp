#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topomagic/mpo.hpp"
#include "topomagic/mps.hpp"

namespace topomagic {

struct SolverConfig {
  std::size_t max_bond = 64;
  double cutoff = 1e-12;
  int max_sweeps = 40;
  int min_sweeps = 3;
  double energy_tolerance = 1e-10;
  int krylov_dim = 30;
  int lanczos_restarts = 3;
  double tilt = 0.0;           // eps in H - eps * S (S from symmetry_tilt)
  std::uint64_t seed = 1234;   // random product-state initialization

  void validate() const;  // throws ConfigError
};

struct GroundStateResult {
  Mps state;                 // normalized, ortho center 0
  double energy = 0.0;       // <H>, without the tilt
  double variance = 0.0;     // <H^2> - <H>^2
  bool converged = false;
  int sweeps = 0;
  double max_discarded = 0.0;
  std::vector<double> sweep_energies;  // of the (tilted) operator actually minimized
};

/// Two-site DMRG. `tilt_operator` (if given) is subtracted with weight
/// cfg.tilt; it must commute with h.
GroundStateResult find_ground_state(const Mpo& h, const SolverConfig& cfg,
                                    const std::optional<Mps>& initial = std::nullopt,
                                    const std::optional<Mpo>& tilt_operator = std::nullopt);

}  // namespace topomagic

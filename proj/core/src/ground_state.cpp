#include "topomagic/ground_state.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "topomagic/errors.hpp"
#include "topomagic/lanczos.hpp"

namespace topomagic {

void SolverConfig::validate() const {
  if (max_bond < 2) throw ConfigError("chi", "bond dimension must be at least 2");
  if (!(energy_tolerance > 0)) throw ConfigError("energy_tol", "must be positive");
  if (cutoff < 0) throw ConfigError("cutoff", "must be non-negative");
  if (max_sweeps < 1) throw ConfigError("max_sweeps", "must be positive");
  if (krylov_dim < 2) throw ConfigError("krylov_dim", "must be at least 2");
  if (tilt < 0) throw ConfigError("tilt", "must be non-negative");
}

namespace {

// Environments are (bra bond, mpo bond, ket bond).
DenseTensor grow_left(const DenseTensor& env, const DenseTensor& a, const DenseTensor& w) {
  DenseTensor t = contract(env, {2}, a, {0});      // (a', w, s, b)
  t = contract(t, {1, 2}, w, {0, 2});              // (a', b, s', wr)
  t = contract(a.conj(), {0, 1}, t, {0, 2});       // (ar, b, wr)
  return t.permuted({0, 2, 1});
}

DenseTensor grow_right(const DenseTensor& env, const DenseTensor& a, const DenseTensor& w) {
  DenseTensor t = contract(a, {2}, env, {2});      // (b, s, ar, wr)
  t = contract(w, {2, 3}, t, {1, 3});              // (w, s', b, ar)
  return contract(a.conj(), {1, 2}, t, {1, 3});    // (a, w, b)
}

DenseTensor apply_two_site(const DenseTensor& l, const DenseTensor& w1, const DenseTensor& w2,
                           const DenseTensor& r, const DenseTensor& theta) {
  DenseTensor t = contract(l, {2}, theta, {0});    // (a', w, s1, s2, b)
  t = contract(t, {1, 2}, w1, {0, 2});             // (a', s2, b, s1', wm)
  t = contract(t, {4, 1}, w2, {0, 2});             // (a', b, s1', s2', wr)
  return contract(t, {1, 4}, r, {2, 1});           // (a', s1', s2', b')
}

DenseTensor unit_env() {
  DenseTensor e({1, 1, 1});
  e({0, 0, 0}) = 1.0;
  return e;
}

Mps random_product(std::size_t length, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) ts.push_back(DenseTensor::random({1, d, 1}, rng));
  return normalize(Mps(d, std::move(ts)));
}

}  // namespace

GroundStateResult find_ground_state(const Mpo& h, const SolverConfig& cfg, const std::optional<Mps>& initial,
                                    const std::optional<Mpo>& tilt_operator) {
  cfg.validate();
  const std::size_t n = h.length(), d = h.local_dim();
  if (n < 2) throw DimensionError("DMRG needs at least two sites");
  if (n <= 8 && std::pow(static_cast<double>(d), static_cast<double>(n)) <= 4096 && !is_hermitian(h, 1e-10)) {
    throw ContractViolation("Hamiltonian MPO is not Hermitian");
  }
  const Mpo op = tilt_operator && cfg.tilt > 0 ? add(h, *tilt_operator, 1.0, -cfg.tilt) : h;

  Mps psi = initial ? *initial : random_product(n, d, cfg.seed);
  if (psi.length() != n || psi.local_dim() != d) throw DimensionError("initial state does not match the Hamiltonian");
  psi = normalize(std::move(psi));  // ortho center 0, rest right-canonical

  std::vector<DenseTensor> left(n + 1), right(n + 1);
  left[0] = unit_env();
  right[n] = unit_env();
  for (std::size_t i = n; i-- > 1;) right[i] = grow_right(right[i + 1], psi.site(i), op.site(i));

  const TruncationPolicy policy{cfg.max_bond, cfg.cutoff, true};
  LanczosOptions lopt;
  lopt.krylov_dim = cfg.krylov_dim;
  lopt.max_restarts = cfg.lanczos_restarts;
  lopt.tolerance = 1e-10;

  GroundStateResult res;
  double energy = 0.0, previous = std::numeric_limits<double>::infinity();

  auto optimize = [&](std::size_t i, bool to_right) {
    DenseTensor theta = contract(psi.site(i), {2}, psi.site(i + 1), {0});  // (a, s1, s2, b)
    const Shape shape = theta.shape();
    const auto& l = left[i];
    const auto& r = right[i + 2];
    const auto& w1 = op.site(i);
    const auto& w2 = op.site(i + 1);
    LinearMap apply = [&](const ComplexVector& in, ComplexVector& out) {
      DenseTensor x(shape, std::vector<cplx>(in.data(), in.data() + in.size()));
      DenseTensor y = apply_two_site(l, w1, w2, r, x);
      out = Eigen::Map<const ComplexVector>(y.data(), static_cast<Eigen::Index>(y.size()));
    };
    ComplexVector v0 = Eigen::Map<const ComplexVector>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    auto eig = lanczos_lowest(apply, v0, lopt);
    energy = eig.value;
    DenseTensor opt(shape, std::vector<cplx>(eig.vector.data(), eig.vector.data() + eig.vector.size()));
    SvdResult f = svd_truncate(opt, {0, 1}, policy);
    res.max_discarded = std::max(res.max_discarded, f.discarded_weight);
    const std::size_t k = f.s.size();
    if (to_right) {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t c = 0; c < f.v.size() / k; ++c) f.v.data()[a * (f.v.size() / k) + c] *= f.s[a];
      psi.mutable_site(i) = std::move(f.u);
      psi.mutable_site(i + 1) = std::move(f.v);
      left[i + 1] = grow_left(left[i], psi.site(i), op.site(i));
    } else {
      const std::size_t rows = f.u.size() / k;
      for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t c = 0; c < k; ++c) f.u.data()[a * k + c] *= f.s[c];
      psi.mutable_site(i) = std::move(f.u);
      psi.mutable_site(i + 1) = std::move(f.v);
      right[i + 1] = grow_right(right[i + 2], psi.site(i + 1), op.site(i + 1));
    }
  };

  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (std::size_t i = 0; i + 1 < n; ++i) optimize(i, true);
    for (std::size_t i = n - 1; i-- > 0;) optimize(i, false);
    res.sweeps = sweep;
    res.sweep_energies.push_back(energy);
    if (sweep >= cfg.min_sweeps && std::abs(previous - energy) < cfg.energy_tolerance) {
      res.converged = true;
      break;
    }
    previous = energy;
  }
  psi.set_ortho_center(0);
  psi = normalize(std::move(psi));
  res.energy = expectation(psi, h);
  res.variance = std::max(0.0, expectation_squared(psi, h) - res.energy * res.energy);
  res.state = std::move(psi);
  return res;
}

}  // namespace topomagic

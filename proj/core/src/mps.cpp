#include "topomagic/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "topomagic/errors.hpp"

namespace topomagic {

namespace {

DenseTensor identity_env(std::size_t chi) {
  DenseTensor e({chi, chi});
  for (std::size_t i = 0; i < chi; ++i) e({i, i}) = 1.0;
  return e;
}

// E'(a_r, b_r) = sum_s conj(A_s)^T E B_s
DenseTensor transfer(const DenseTensor& env, const DenseTensor& bra, const DenseTensor& ket) {
  DenseTensor t = contract(env, {1}, ket, {0});  // (a_l, s, b_r)
  return contract(bra.conj(), {0, 1}, t, {0, 1});
}

DenseTensor transfer_with(const DenseTensor& env, const DenseTensor& bra, const DenseTensor& ket,
                          const DenseTensor& op) {
  DenseTensor t = contract(env, {1}, ket, {0});  // (a_l, s', b_r)
  t = contract(op, {1}, t, {1});                 // (s, a_l, b_r)
  return contract(bra.conj(), {0, 1}, t, {1, 0});
}

bool is_unitary(const RowMatrix& op) {
  const RowMatrix id = RowMatrix::Identity(op.rows(), op.cols());
  return (op.adjoint() * op - id).norm() < 1e-12;
}

}  // namespace

Mps::Mps(std::size_t local_dim, std::vector<DenseTensor> tensors)
    : local_dim_(local_dim), tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw DimensionError("MPS needs at least one site");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& t = tensors_[i];
    if (t.rank() != 3) throw DimensionError("MPS site " + std::to_string(i) + " is not rank 3");
    if (t.extent(1) != local_dim_) {
      throw DimensionError("MPS site " + std::to_string(i) + " has physical extent " +
                           std::to_string(t.extent(1)) + ", expected " + std::to_string(local_dim_));
    }
    if (i > 0 && tensors_[i - 1].extent(2) != t.extent(0)) {
      throw DimensionError("MPS bond mismatch between sites " + std::to_string(i - 1) + " and " +
                           std::to_string(i));
    }
  }
  if (tensors_.front().extent(0) != 1 || tensors_.back().extent(2) != 1) {
    throw DimensionError("MPS boundary bonds must have extent 1");
  }
}

Mps Mps::product(std::size_t length, std::span<const cplx> local_state) {
  const std::size_t d = local_state.size();
  std::vector<DenseTensor> ts;
  ts.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    DenseTensor t({1, d, 1});
    for (std::size_t s = 0; s < d; ++s) t({0, s, 0}) = local_state[s];
    ts.push_back(std::move(t));
  }
  return Mps(d, std::move(ts));
}

Mps Mps::random(std::size_t length, std::size_t local_dim, std::size_t max_bond,
                std::mt19937_64& rng) {
  std::vector<std::size_t> bonds(length + 1, 1);
  for (std::size_t cut = 1; cut < length; ++cut) {
    double left = std::pow(static_cast<double>(local_dim), static_cast<double>(cut));
    double right = std::pow(static_cast<double>(local_dim), static_cast<double>(length - cut));
    bonds[cut] = static_cast<std::size_t>(std::min({static_cast<double>(max_bond), left, right}));
  }
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) {
    ts.push_back(DenseTensor::random({bonds[i], local_dim, bonds[i + 1]}, rng));
  }
  return normalize(Mps(local_dim, std::move(ts)));
}

void Mps::set_site(std::size_t i, DenseTensor t) {
  tensors_.at(i) = std::move(t);
  center_.reset();
}

std::size_t Mps::bond_dim(std::size_t cut) const {
  if (cut > length()) throw DimensionError("bond index out of range");
  if (cut == 0) return 1;
  return tensors_[cut - 1].extent(2);
}

std::size_t Mps::max_bond_dim() const {
  std::size_t m = 1;
  for (const auto& t : tensors_) m = std::max(m, t.extent(2));
  return m;
}

Mps canonicalize(Mps psi, std::size_t center) {
  const std::size_t n = psi.length();
  if (center >= n) throw DimensionError("orthogonality center out of range");
  for (std::size_t i = 0; i < center; ++i) {
    auto [q, r] = qr(psi.site(i), 2);
    DenseTensor next = contract(r, {1}, psi.site(i + 1), {0});
    psi.mutable_site(i) = std::move(q);
    psi.mutable_site(i + 1) = std::move(next);
  }
  for (std::size_t i = n - 1; i > center; --i) {
    auto [l, q] = lq(psi.site(i), 1);
    DenseTensor prev = contract(psi.site(i - 1), {2}, l, {0});
    psi.mutable_site(i) = std::move(q);
    psi.mutable_site(i - 1) = std::move(prev);
  }
  psi.set_ortho_center(center);
  return psi;
}

Mps normalize(Mps psi) {
  psi = canonicalize(std::move(psi), 0);
  const double nrm = psi.site(0).norm();
  if (!(nrm > 1e-300) || !std::isfinite(nrm)) {
    throw DegenerateStateError("cannot normalize a state with zero or non-finite norm");
  }
  psi.mutable_site(0) *= cplx(1.0 / nrm);
  psi.set_norm_log(0.0);
  return psi;
}

CompressResult compress(Mps psi, const TruncationPolicy& policy) {
  const std::size_t n = psi.length();
  psi = canonicalize(std::move(psi), n - 1);
  double discarded = 0.0;
  for (std::size_t i = n - 1; i > 0; --i) {
    SvdResult f = svd_truncate(psi.site(i), {0}, policy);
    discarded += f.discarded_weight;
    DenseTensor us = f.u;
    for (std::size_t r = 0; r < us.extent(0); ++r) {
      for (std::size_t k = 0; k < f.s.size(); ++k) us({r, k}) *= f.s[k];
    }
    psi.mutable_site(i) = std::move(f.v);
    psi.mutable_site(i - 1) = contract(psi.site(i - 1), {2}, us, {0});
  }
  psi.set_ortho_center(0);
  return {std::move(psi), discarded};
}

Mps superpose(const Mps& a, const Mps& b, cplx wa, cplx wb) {
  if (a.length() != b.length() || a.local_dim() != b.local_dim()) {
    throw DimensionError("superpose: chains differ in length or local dimension");
  }
  const std::size_t n = a.length(), d = a.local_dim();
  // Fold the scale factors into the first site.
  wa *= std::exp(a.norm_log());
  wb *= std::exp(b.norm_log());
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.site(i);
    const auto& y = b.site(i);
    const bool first = i == 0, last = i + 1 == n;
    const std::size_t xl = first ? 0 : x.extent(0), xr = last ? 0 : x.extent(2);
    DenseTensor t({first ? 1 : x.extent(0) + y.extent(0), d, last ? 1 : x.extent(2) + y.extent(2)});
    const cplx ca = first ? wa : 1.0, cb = first ? wb : 1.0;
    for (std::size_t l = 0; l < x.extent(0); ++l)
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t r = 0; r < x.extent(2); ++r) t({l, s, r}) += ca * x({l, s, r});
    for (std::size_t l = 0; l < y.extent(0); ++l)
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t r = 0; r < y.extent(2); ++r) t({xl + l, s, xr + r}) += cb * y({l, s, r});
    ts.push_back(std::move(t));
  }
  return Mps(d, std::move(ts));
}

Mps apply_site_operator(Mps psi, std::size_t site, const RowMatrix& op) {
  if (site >= psi.length()) {
    throw DimensionError("site " + std::to_string(site) + " out of range for chain of length " +
                         std::to_string(psi.length()));
  }
  const auto d = static_cast<Eigen::Index>(psi.local_dim());
  if (op.rows() != d || op.cols() != d) throw DimensionError("site operator has wrong dimension");
  const bool unitary = is_unitary(op);
  const auto center = psi.ortho_center();
  DenseTensor t = contract(DenseTensor::from_matrix(op), {1}, psi.site(site), {1});  // (s, l, r)
  psi.set_site(site, t.permuted({1, 0, 2}));
  if (unitary) psi.set_ortho_center(center);
  return psi;
}

Mps apply_phase_gate(Mps psi, std::size_t site, double theta) {
  if (psi.local_dim() != 2) throw DimensionError("phase gate requires qubits (d = 2)");
  RowMatrix s = RowMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = std::polar(1.0, theta);
  return apply_site_operator(std::move(psi), site, s);
}

Mps dope_with_t_gates(Mps psi, std::span<const std::size_t> sites) {
  std::set<std::size_t> seen;
  for (std::size_t s : sites) {
    if (!seen.insert(s).second) throw ContractViolation("duplicate T-gate site " + std::to_string(s));
  }
  for (std::size_t s : sites) psi = apply_phase_gate(std::move(psi), s, std::numbers::pi / 4.0);
  return psi;
}

cplx overlap(const Mps& a, const Mps& b) {
  if (a.length() != b.length() || a.local_dim() != b.local_dim()) {
    throw DimensionError("overlap: chains differ in length or local dimension");
  }
  DenseTensor env = identity_env(1);
  for (std::size_t i = 0; i < a.length(); ++i) env = transfer(env, a.site(i), b.site(i));
  return env({0, 0}) * std::exp(a.norm_log() + b.norm_log());
}

double norm(const Mps& psi) { return std::sqrt(std::max(0.0, overlap(psi, psi).real())); }

cplx expect_product(const Mps& psi, std::span<const std::pair<std::size_t, RowMatrix>> ops) {
  std::vector<const RowMatrix*> at(psi.length(), nullptr);
  for (const auto& [site, m] : ops) {
    if (site >= psi.length()) throw DimensionError("operator site out of range");
    if (m.rows() != static_cast<Eigen::Index>(psi.local_dim()) || m.cols() != m.rows()) {
      throw DimensionError("operator dimension does not match local dimension");
    }
    if (at[site]) throw DimensionError("two operators on site " + std::to_string(site));
    at[site] = &m;
  }
  DenseTensor env = identity_env(1);
  for (std::size_t i = 0; i < psi.length(); ++i) {
    if (at[i]) {
      env = transfer_with(env, psi.site(i), psi.site(i), DenseTensor::from_matrix(*at[i]));
    } else {
      env = transfer(env, psi.site(i), psi.site(i));
    }
  }
  return env({0, 0}) * std::exp(2.0 * psi.norm_log());
}

cplx expect_pauli(const Mps& psi, const PauliString& p) {
  p.validate(psi.length(), psi.local_dim());
  std::vector<std::pair<std::size_t, RowMatrix>> ops;
  for (const auto& [site, alpha] : p.ops) ops.emplace_back(site, local_pauli(psi.local_dim(), alpha));
  return expect_product(psi, ops);
}

std::vector<double> bond_spectrum(const Mps& psi, std::size_t cut) {
  if (cut == 0 || cut >= psi.length()) throw DimensionError("cut must lie in [1, L-1]");
  Mps c = canonicalize(psi, cut - 1);
  const auto m = c.site(cut - 1).matrix(2);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  double nrm = 0.0;
  for (double v : out) nrm += v * v;
  nrm = std::sqrt(nrm);
  if (!(nrm > 0.0)) throw DegenerateStateError("bond spectrum of a zero state");
  for (double& v : out) v /= nrm;
  return out;
}

double entropy_bits_from_schmidt(std::span<const double> schmidt) {
  double h = 0.0;
  for (double s : schmidt) {
    const double p = s * s;
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

double entanglement_entropy(const Mps& psi, std::size_t cut) {
  const auto s = bond_spectrum(psi, cut);
  return entropy_bits_from_schmidt(s);
}

RowMatrix reduced_density_matrix(const Mps& psi, const SiteSet& sites) {
  if (sites.empty()) return RowMatrix::Constant(1, 1, 1.0);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] >= psi.length()) throw DimensionError("region site out of range");
    if (i > 0 && sites[i] <= sites[i - 1]) throw DimensionError("region sites must be sorted and unique");
  }
  const std::size_t first = sites.front(), last = sites.back();
  Mps c = canonicalize(psi, first);
  const double nrm2 = std::pow(c.site(first).norm(), 2);
  if (!(nrm2 > 0.0)) throw DegenerateStateError("reduced density matrix of a zero state");

  // env shape: (open_ket, open_bra, bond_ket, bond_bra)
  const std::size_t chi0 = c.bond_dim(first);
  DenseTensor env({1, 1, chi0, chi0});
  for (std::size_t a = 0; a < chi0; ++a) env({0, 0, a, a}) = 1.0;

  const std::size_t d = psi.local_dim();
  std::size_t k = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const DenseTensor& a = c.site(i);
    const DenseTensor ac = a.conj();
    DenseTensor t = contract(env, {2}, a, {0});  // (O, O', a', s, b)
    if (k < sites.size() && sites[k] == i) {
      ++k;
      DenseTensor u = contract(t, {2}, ac, {0});  // (O, O', s, b, s', b')
      const std::size_t o = u.extent(0), op = u.extent(1), chi = u.extent(3);
      env = u.permuted({0, 2, 1, 4, 3, 5}).reshaped({o * d, op * d, chi, chi});
    } else {
      env = contract(t, {2, 3}, ac, {0, 1});  // (O, O', b, b')
    }
  }
  // Sites right of `last` are right-isometries: trace the remaining bond.
  const std::size_t o = env.extent(0), chi = env.extent(2);
  RowMatrix rho = RowMatrix::Zero(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(o));
  for (std::size_t x = 0; x < o; ++x) {
    for (std::size_t y = 0; y < o; ++y) {
      cplx acc = 0.0;
      for (std::size_t b = 0; b < chi; ++b) acc += env({x, y, b, b});
      rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = acc;
    }
  }
  rho /= nrm2;
  return rho;
}

double subsystem_entropy(const Mps& psi, const SiteSet& region, std::size_t max_dimension) {
  const std::size_t n = psi.length();
  SiteSet reg = region;
  std::sort(reg.begin(), reg.end());
  reg.erase(std::unique(reg.begin(), reg.end()), reg.end());
  for (std::size_t s : reg) {
    if (s >= n) throw DimensionError("region site out of range");
  }
  if (reg.empty() || reg.size() == n) return 0.0;

  SiteSet comp;
  for (std::size_t i = 0, k = 0; i < n; ++i) {
    if (k < reg.size() && reg[k] == i) ++k;
    else comp.push_back(i);
  }
  auto contiguous = [](const SiteSet& s) { return s.back() - s.front() + 1 == s.size(); };
  if (contiguous(reg) && (reg.front() == 0 || reg.back() == n - 1)) {
    return entanglement_entropy(psi, reg.front() == 0 ? reg.size() : reg.front());
  }
  if (contiguous(comp) && (comp.front() == 0 || comp.back() == n - 1)) {
    return entanglement_entropy(psi, comp.front() == 0 ? comp.size() : comp.front());
  }

  const SiteSet& side = comp.size() < reg.size() ? comp : reg;
  const double dim = std::pow(static_cast<double>(psi.local_dim()), static_cast<double>(side.size()));
  if (dim > static_cast<double>(max_dimension)) {
    throw CapacityError("subsystem_entropy: reduced density matrix of dimension " +
                        std::to_string(static_cast<std::size_t>(dim)) + " exceeds the limit of " +
                        std::to_string(max_dimension));
  }
  const RowMatrix rho = reduced_density_matrix(psi, side);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace topomagic

#include "topomagic/pauli_mps.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "topomagic/errors.hpp"
#include "topomagic/pauli.hpp"

namespace topomagic {

std::size_t PauliMps::max_bond_dim() const {
  std::size_t m = 1;
  for (const auto& t : tensors) m = std::max(m, t.extent(2));
  return m;
}

std::size_t PauliMps::region_size() const {
  return static_cast<std::size_t>(std::count(free.begin(), free.end(), true));
}

namespace {

// P(alpha, s, s') for all basis operators of one site.
DenseTensor basis_tensor(std::size_t d) {
  const std::size_t e = d * d;
  DenseTensor p({e, d, d});
  for (std::size_t a = 0; a < e; ++a) {
    const RowMatrix m = local_pauli(d, a);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) p({a, s, t}) = m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
  }
  return p;
}

void left_orthogonalize(PauliMps& p) {
  const std::size_t n = p.length();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto [q, r] = qr(p.tensors[i], 2);
    const double nr = r.norm();
    if (!(nr > 0.0) || !std::isfinite(nr)) throw DegenerateStateError("Pauli MPS has zero norm");
    r *= cplx(1.0 / nr);
    p.log_scale += std::log(nr);
    p.tensors[i] = std::move(q);
    p.tensors[i + 1] = contract(r, {1}, p.tensors[i + 1], {0});
  }
  const double nl = p.tensors[n - 1].norm();
  if (!(nl > 0.0) || !std::isfinite(nl)) throw DegenerateStateError("Pauli MPS has zero norm");
  p.tensors[n - 1] *= cplx(1.0 / nl);
  p.log_scale += std::log(nl);
}

// Input must be left-orthogonal with a unit-norm last site.
double truncate_right_to_left(PauliMps& p, const TruncationPolicy& policy) {
  TruncationPolicy pol = policy;
  pol.renormalize = true;
  double discarded = 0.0;
  for (std::size_t i = p.length() - 1; i > 0; --i) {
    SvdResult f = svd_truncate(p.tensors[i], {0}, pol);
    discarded += f.discarded_weight;
    const std::size_t k = f.s.size(), rows = f.u.size() / k;
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t c = 0; c < k; ++c) f.u.data()[a * k + c] *= f.s[c];
    p.tensors[i] = std::move(f.v);
    p.tensors[i - 1] = contract(p.tensors[i - 1], {2}, f.u, {0});
  }
  return discarded;
}

// Elementwise (Hadamard) product of two Pauli MPS, zipped up left to right
// with truncation at every bond. Result is left-orthogonal with unit last site.
PauliMps zip_hadamard(const PauliMps& w, const PauliMps& q, const TruncationPolicy& policy, double& discarded) {
  const std::size_t n = w.length();
  PauliMps out;
  out.local_dim = w.local_dim;
  out.free = w.free;
  out.order = q.order + w.order;
  out.log_scale = w.log_scale + q.log_scale;
  out.tensors.resize(n);
  // Only the bond cap applies here: the sites still to come are not
  // orthonormal, so the carry's spectrum can hide weight the tail restores.
  // The cutoff is applied by the canonical right-to-left sweep afterwards.
  TruncationPolicy pol = policy;
  pol.renormalize = true;
  pol.cutoff = 0.0;

  DenseTensor carry({1, 1, 1});  // (k, a, b)
  carry({0, 0, 0}) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& wa = w.tensors[i];  // (a, e, a')
    const DenseTensor& qb = q.tensors[i];  // (b, e, b')
    const std::size_t e = wa.extent(1);
    if (qb.extent(1) != e) throw DimensionError("Hadamard product: physical extents differ");
    DenseTensor x = contract(carry, {1}, wa, {0});  // (k, b, e, a')
    const std::size_t k = x.extent(0), bl = x.extent(1), ar = x.extent(3), br = qb.extent(2);
    // t[k, e, a', b'] = sum_b x[k, b, e, a'] qb[b, e, b'], one matrix product per e.
    const DenseTensor xe = x.permuted({2, 0, 3, 1});   // (e, k, a', b)
    const DenseTensor qe = qb.permuted({1, 0, 2});     // (e, b, b')
    DenseTensor te({e, k, ar, br});
    const auto rows = static_cast<Eigen::Index>(k * ar);
    const auto inner = static_cast<Eigen::Index>(bl), ncol = static_cast<Eigen::Index>(br);
    for (std::size_t alpha = 0; alpha < e; ++alpha) {
      Eigen::Map<const RowMatrix> xs(xe.data() + alpha * k * ar * bl, rows, inner);
      Eigen::Map<const RowMatrix> qs(qe.data() + alpha * bl * br, inner, ncol);
      Eigen::Map<RowMatrix>(te.data() + alpha * k * ar * br, rows, ncol).noalias() = xs * qs;
    }
    DenseTensor t = te.permuted({1, 0, 2, 3});
    if (i + 1 == n) {
      const double nl = t.norm();
      if (!(nl > 0.0)) throw DegenerateStateError("Hadamard product vanished");
      t *= cplx(1.0 / nl);
      out.log_scale += std::log(nl);
      out.tensors[i] = std::move(t).reshaped({k, e, 1});
      break;
    }
    // Kept singular values come back with unit norm; the full norm of t goes
    // into the scale so truncation does not bias the overall weight.
    const double snorm = t.norm();
    if (!(snorm > 0.0)) throw DegenerateStateError("Hadamard product vanished");
    SvdResult f = svd_truncate(t, {0, 1}, pol);
    discarded += f.discarded_weight;
    const std::size_t kn = f.s.size();
    DenseTensor v = std::move(f.v);  // (kn, a', b')
    const std::size_t cols = v.size() / kn;
    for (std::size_t a = 0; a < kn; ++a)
      for (std::size_t c = 0; c < cols; ++c) v.data()[a * cols + c] *= f.s[a];
    out.log_scale += std::log(snorm);
    out.tensors[i] = std::move(f.u);
    carry = std::move(v);
  }
  return out;
}

// Builds the (restricted) Pauli MPS of a right-canonical state and compresses
// it in one left-to-right pass, without forming the chi^2 bond tensors.
PauliMps build_streamed(const Mps& psi, const std::vector<bool>& free, const TruncationPolicy& policy,
                        double& discarded) {
  const std::size_t n = psi.length(), d = psi.local_dim();
  const DenseTensor basis = basis_tensor(d);
  DenseTensor identity({1, d, d});
  for (std::size_t s = 0; s < d; ++s) identity({0, s, s}) = 1.0;
  TruncationPolicy pol = policy;
  pol.renormalize = true;
  pol.cutoff = 0.0;  // see zip_hadamard

  PauliMps out;
  out.local_dim = d;
  out.free = free;
  out.tensors.resize(n);
  out.log_scale = 2.0 * psi.norm_log() - 0.5 * std::log(static_cast<double>(d)) * static_cast<double>(n);

  DenseTensor carry({1, 1, 1});  // (k, a, b): bra bond, ket bond
  carry({0, 0, 0}) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& a = psi.site(i);
    DenseTensor x = contract(carry, {1}, a.conj(), {0});  // (k, b, s, a')
    x = contract(x, {1}, a, {0});                          // (k, s, a', s', b')
    DenseTensor t = contract(free[i] ? basis : identity, {1, 2}, x, {1, 3});  // (alpha, k, a', b')
    t = t.permuted({1, 0, 2, 3});
    const std::size_t k = t.extent(0), ee = t.extent(1), ar = t.extent(2), br = t.extent(3);
    const double nt = t.norm();
    if (!(nt > 0.0) || !std::isfinite(nt)) throw DegenerateStateError("restricted Pauli vector vanished");
    t *= cplx(1.0 / nt);
    out.log_scale += std::log(nt);
    if (i + 1 == n) {
      out.tensors[i] = std::move(t).reshaped({k, ee, 1});
      break;
    }
    SvdResult f = svd_truncate(t, {0, 1}, pol);
    discarded += f.discarded_weight;
    const std::size_t kn = f.s.size(), cols = ar * br;
    DenseTensor v = std::move(f.v);
    for (std::size_t r = 0; r < kn; ++r)
      for (std::size_t c = 0; c < cols; ++c) v.data()[r * cols + c] *= f.s[r];
    out.tensors[i] = std::move(f.u);
    carry = std::move(v).reshaped({kn, ar, br});
  }
  return out;
}

}  // namespace

PauliCompression build_compressed_pauli_mps(const Mps& psi, const std::optional<SiteSet>& region,
                                            const TruncationPolicy& policy) {
  const double nrm = norm(psi);
  if (std::abs(nrm - 1.0) > 1e-8) {
    throw ContractViolation("build_pauli_mps needs a normalized state (norm " + std::to_string(nrm) + ")");
  }
  std::vector<bool> free(psi.length(), !region.has_value());
  if (region)
    for (std::size_t s : *region) free.at(s) = true;
  const Mps right = canonicalize(psi, 0);
  double dw = 0.0;
  PauliMps p = build_streamed(right, free, policy, dw);
  dw += truncate_right_to_left(p, policy);
  return {std::move(p), dw};
}

PauliMps build_pauli_mps(const Mps& psi, const std::optional<SiteSet>& region) {
  const double nrm = norm(psi);
  if (std::abs(nrm - 1.0) > 1e-8) {
    throw ContractViolation("build_pauli_mps needs a normalized state (norm " + std::to_string(nrm) + ")");
  }
  const std::size_t n = psi.length(), d = psi.local_dim();
  PauliMps p;
  p.local_dim = d;
  p.free.assign(n, !region.has_value());
  if (region) {
    for (std::size_t s : *region) {
      if (s >= n) throw DimensionError("region site out of range");
      p.free[s] = true;
    }
  }
  const DenseTensor basis = basis_tensor(d);
  const double inv = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const DenseTensor& a = psi.site(i);  // (l, s', r)
    DenseTensor c = contract(basis, {2}, a, {1});                 // (alpha, s, l', r')
    DenseTensor b = contract(a.conj(), {1}, c, {1});               // (l, r, alpha, l', r')
    const std::size_t l = a.extent(0), r = a.extent(2), e = d * d;
    b = b.permuted({0, 3, 2, 1, 4}).reshaped({l * l, e, r * r});
    if (!p.free[i]) {
      DenseTensor id({l * l, 1, r * r});
      for (std::size_t x = 0; x < l * l; ++x)
        for (std::size_t y = 0; y < r * r; ++y) id({x, 0, y}) = b({x, 0, y});
      b = std::move(id);
    }
    b *= cplx(inv);
    p.tensors.push_back(std::move(b));
  }
  p.log_scale = psi.norm_log() * 2.0;
  return p;
}

cplx amplitude(const PauliMps& p, const std::vector<std::size_t>& labels) {
  if (labels.size() != p.length()) throw DimensionError("amplitude: wrong number of labels");
  RowMatrix acc = RowMatrix::Ones(1, 1);
  for (std::size_t i = 0; i < p.length(); ++i) {
    const auto& t = p.tensors[i];
    const std::size_t alpha = p.free[i] ? labels[i] : 0;
    if (!p.free[i] && labels[i] != 0) return 0.0;
    if (alpha >= t.extent(1)) throw DimensionError("amplitude: label out of range");
    RowMatrix m(static_cast<Eigen::Index>(t.extent(0)), static_cast<Eigen::Index>(t.extent(2)));
    for (std::size_t a = 0; a < t.extent(0); ++a)
      for (std::size_t b = 0; b < t.extent(2); ++b) m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = t({a, alpha, b});
    acc = acc * m;
  }
  return acc(0, 0) * std::exp(p.log_scale);
}

double log_norm_squared(const PauliMps& p) {
  PauliMps c = p;
  left_orthogonalize(c);
  return 2.0 * c.log_scale;
}

PauliCompression compress(PauliMps p, const TruncationPolicy& policy) {
  left_orthogonalize(p);
  const double dw = truncate_right_to_left(p, policy);
  return {std::move(p), dw};
}

ReplicaResult apply_replica(const PauliMps& p, int n, const TruncationPolicy& policy) {
  if (p.order != 1) throw ContractViolation("apply_replica expects an order-1 Pauli MPS");
  if (n < 1) throw ContractViolation("replica order must be at least 1");
  ReplicaResult res;
  PauliMps q = p;
  for (int k = 1; k < n; ++k) {
    double dw = 0.0;
    q = zip_hadamard(p, q, policy, dw);
    dw += truncate_right_to_left(q, policy);
    res.discarded.push_back(dw);
  }
  res.state = std::move(q);
  return res;
}

RegionSre subsystem_sre(const Mps& psi, const SiteSet& region, int n, const SreOptions& opt) {
  if (n < 2) throw ContractViolation("SRE replica index must be an integer >= 2");
  SiteSet reg = region;
  std::sort(reg.begin(), reg.end());
  reg.erase(std::unique(reg.begin(), reg.end()), reg.end());
  const bool full = reg.empty() || reg.size() == psi.length();
  RegionSre out;

  auto base = build_compressed_pauli_mps(psi, full ? std::nullopt : std::optional<SiteSet>(reg), opt.policy);
  out.discarded = base.discarded_weight;
  out.chi_p = base.state.max_bond_dim();
  const double ln1 = 2.0 * base.state.log_scale;
  auto rep = apply_replica(base.state, n, opt.policy);
  for (double dw : rep.discarded) out.discarded = std::max(out.discarded, dw);
  out.chi_p = std::max(out.chi_p, rep.state.max_bond_dim());
  const double lnn = 2.0 * rep.state.log_scale;

  const double ln2 = std::numbers::ln2;
  out.log2_norm1 = ln1 / ln2;
  out.log2_normn = lnn / ln2;
  const double ld = std::log2(static_cast<double>(psi.local_dim())) * static_cast<double>(psi.length());
  out.value = (out.log2_normn - out.log2_norm1) / (1.0 - n) - ld;

  if (out.discarded > opt.alarm) {
    std::ostringstream s;
    s << "discarded weight " << out.discarded << " exceeds alarm " << opt.alarm << " (chi_p " << opt.policy.max_bond << ")";
    out.warnings.push_back(s.str());
  }
  if (out.value < -1e-9) {
    std::ostringstream s;
    s << "negative SRE " << out.value;
    out.warnings.push_back(s.str());
  }
  return out;
}

double full_state_sre(const Mps& psi, int n, const SreOptions& opt) {
  return subsystem_sre(psi, {}, n, opt).value;
}

SreReport topological_sre(const Mps& psi, const PartitionSpec& partition, int n, const SreOptions& opt) {
  if (partition.length != psi.length()) throw DimensionError("partition length does not match the state");
  SreReport rep;
  rep.geometry = partition.geometry;
  rep.n = n;
  rep.cutoff = opt.policy.cutoff;
  const auto regions = partition.regions();
  std::array<RegionSre, 4> parts;
  if (opt.parallel) {
    std::array<std::future<RegionSre>, 4> fs;
    for (std::size_t k = 0; k < 4; ++k)
      fs[k] = std::async(std::launch::async, [&, k] { return subsystem_sre(psi, regions[k], n, opt); });
    for (std::size_t k = 0; k < 4; ++k) parts[k] = fs[k].get();
  } else {
    for (std::size_t k = 0; k < 4; ++k) parts[k] = subsystem_sre(psi, regions[k], n, opt);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    rep.values[k] = parts[k].value;
    rep.discarded[k] = parts[k].discarded;
    rep.chi_p = std::max(rep.chi_p, parts[k].chi_p);
    for (auto& w : parts[k].warnings) rep.warnings.push_back(std::string(kRegionNames[k]) + ": " + w);
  }
  rep.m_topo = -(rep.values[0] + rep.values[1] - rep.values[2] - rep.values[3]);
  return rep;
}

}  // namespace topomagic

#include "topomagic/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "topomagic/errors.hpp"
#include "topomagic/lanczos.hpp"

namespace topomagic::oracle {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

RowMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  RowMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Local operator bases written out directly (qubit Paulis; qutrit Weyl X^a Z^b).
RowMatrix basis_op(std::size_t d, std::size_t alpha) {
  if (d == 2) {
    const cplx i(0, 1);
    switch (alpha) {
      case 0: return mat2(1, 0, 0, 1);
      case 1: return mat2(0, 1, 1, 0);
      case 2: return mat2(0, -i, i, 0);
      default: return mat2(1, 0, 0, -1);
    }
  }
  const std::size_t a = alpha / d, b = alpha % d;
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
  RowMatrix m = RowMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < d; ++s) {
    // X^a Z^b |s> = w^{b s} |s + a>
    m(static_cast<Eigen::Index>((s + a) % d), static_cast<Eigen::Index>(s)) = std::pow(w, static_cast<double>(b * s));
  }
  return m;
}

}  // namespace

ComplexVector statevector(const Mps& psi) {
  const std::size_t d = psi.local_dim(), n = psi.length();
  const double dim = std::pow(static_cast<double>(d), static_cast<double>(n));
  if (dim > static_cast<double>(kMaxStatevector)) throw CapacityError("statevector: more than 2^14 amplitudes");
  // acc rows: physical prefix, cols: bond
  RowMatrix acc = RowMatrix::Ones(1, 1);
  for (const auto& t : psi.sites()) {
    const std::size_t l = t.extent(0), r = t.extent(2);
    RowMatrix next(acc.rows() * static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(r));
    for (std::size_t s = 0; s < d; ++s) {
      RowMatrix slice(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r));
      for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = 0; b < r; ++b) slice(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = t({a, s, b});
      const RowMatrix part = acc * slice;
      for (Eigen::Index p = 0; p < acc.rows(); ++p) next.row(p * static_cast<Eigen::Index>(d) + static_cast<Eigen::Index>(s)) = part.row(p);
    }
    acc = std::move(next);
  }
  ComplexVector v = acc.col(0);
  const double nv = v.norm();
  if (!(nv > 0)) throw DegenerateStateError("statevector of a zero state");
  return v / nv;
}

ComplexVector apply_local(const ComplexVector& v, std::size_t length, std::size_t d, std::size_t site,
                          const RowMatrix& op) {
  const std::size_t inner = ipow(d, length - 1 - site), outer = ipow(d, site);
  ComplexVector out = ComplexVector::Zero(v.size());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) {
        const cplx m = op(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
        if (m == cplx(0.0)) continue;
        const std::size_t to = (o * d + s) * inner, from = (o * d + t) * inner;
        for (std::size_t i = 0; i < inner; ++i) out(static_cast<Eigen::Index>(to + i)) += m * v(static_cast<Eigen::Index>(from + i));
      }
  return out;
}

std::vector<cplx> pauli_expectations(const ComplexVector& v, std::size_t length, std::size_t d) {
  const std::size_t e = d * d, dim = ipow(d, length), total = ipow(e, length);
  if (static_cast<std::size_t>(v.size()) != dim) throw DimensionError("pauli_expectations: vector size");
  // rho[(s_0 s'_0)(s_1 s'_1)...] = conj(v_s) v_s'
  std::vector<cplx> t(total);
  for (std::size_t x = 0; x < dim; ++x) {
    const cplx cx = std::conj(v(static_cast<Eigen::Index>(x)));
    if (cx == cplx(0.0)) continue;
    for (std::size_t y = 0; y < dim; ++y) {
      std::size_t idx = 0, xs = x, ys = y, mul = 1;
      for (std::size_t k = 0; k < length; ++k) {
        idx += ((xs % d) * d + ys % d) * mul;
        xs /= d;
        ys /= d;
        mul *= e;
      }
      t[idx] = cx * v(static_cast<Eigen::Index>(y));
    }
  }
  // M[alpha, (s, s')] = P_alpha[s, s']
  RowMatrix m(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e));
  for (std::size_t a = 0; a < e; ++a) {
    const RowMatrix p = basis_op(d, a);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t sp = 0; sp < d; ++sp)
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(s * d + sp)) = p(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(sp));
  }
  std::vector<cplx> buf(e);
  for (std::size_t site = 0; site < length; ++site) {
    const std::size_t inner = ipow(e, length - 1 - site), outer = ipow(e, site);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < inner; ++i) {
        for (std::size_t k = 0; k < e; ++k) buf[k] = t[(o * e + k) * inner + i];
        for (std::size_t a = 0; a < e; ++a) {
          cplx acc = 0.0;
          for (std::size_t k = 0; k < e; ++k) acc += m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) * buf[k];
          t[(o * e + a) * inner + i] = acc;
        }
      }
  }
  return t;
}

double exact_sre(const ComplexVector& v, std::size_t length, std::size_t d, int n, const std::optional<SiteSet>& region) {
  if (n < 2) throw ContractViolation("exact_sre: n must be >= 2");
  if ((d == 2 && length > 10) || (d == 3 && length > 7) || d > 3) {
    throw CapacityError("exact_sre: limited to L <= 10 qubits or L <= 7 qutrits");
  }
  std::vector<bool> in(length, !region.has_value() || region->empty());
  if (region)
    for (std::size_t s : *region) in.at(s) = true;
  const auto ex = pauli_expectations(v, length, d);
  const std::size_t e = d * d;
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 0; idx < ex.size(); ++idx) {
    bool ok = true;
    std::size_t r = idx;
    for (std::size_t k = length; k-- > 0;) {
      if (!in[k] && r % e != 0) {
        ok = false;
        break;
      }
      r /= e;
    }
    if (!ok) continue;
    const double a2 = std::norm(ex[idx]);
    den += a2;
    num += std::pow(a2, n);
  }
  return std::log2(num / den) / (1.0 - n);
}

RowMatrix reduced_density_matrix(const ComplexVector& v, std::size_t length, std::size_t d, const SiteSet& region) {
  std::vector<bool> in(length, false);
  for (std::size_t s : region) in.at(s) = true;
  std::size_t kr = 0;
  for (bool b : in) kr += b;
  const std::size_t dr = ipow(d, kr), dc = ipow(d, length - kr);
  RowMatrix m = RowMatrix::Zero(static_cast<Eigen::Index>(dr), static_cast<Eigen::Index>(dc));
  for (std::size_t x = 0; x < static_cast<std::size_t>(v.size()); ++x) {
    std::size_t r = 0, c = 0, rest = x;
    std::vector<std::size_t> digits(length);
    for (std::size_t k = length; k-- > 0;) {
      digits[k] = rest % d;
      rest /= d;
    }
    for (std::size_t k = 0; k < length; ++k) {
      if (in[k]) r = r * d + digits[k];
      else c = c * d + digits[k];
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v(static_cast<Eigen::Index>(x));
  }
  return m * m.adjoint();
}

double entropy(const ComplexVector& v, std::size_t length, std::size_t d, const SiteSet& region) {
  const RowMatrix rho = reduced_density_matrix(v, length, d, region);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

std::vector<Term> model_terms(const ModelSpec& spec, bool periodic) {
  const std::size_t n = spec.length;
  const cplx i(0, 1);
  const RowMatrix x = mat2(0, 1, 1, 0), z = mat2(1, 0, 0, -1);
  std::vector<Term> out;
  auto wrap = [&](std::size_t s) { return s % n; };
  const std::size_t two = periodic ? n : n - 1, three = periodic ? n : n - 2;
  auto zz = [&](std::size_t l, cplx c) { out.push_back({c, {{l, z}, {wrap(l + 1), z}}}); };
  auto zxz = [&](std::size_t l, cplx c) { out.push_back({c, {{l, z}, {wrap(l + 1), x}, {wrap(l + 2), z}}}); };
  auto field = [&](cplx c) {
    for (std::size_t l = 0; l < n; ++l) out.push_back({c, {{l, x}}});
  };
  switch (spec.kind) {
    case ModelKind::tfim:
      for (std::size_t l = 0; l < two; ++l) zz(l, -spec.j);
      field(-spec.h);
      break;
    case ModelKind::cluster_ising:
    case ModelKind::cluster_ising_disordered: {
      for (std::size_t l = 0; l < three; ++l) zxz(l, spec.j);
      field(spec.h);
      if (spec.kind == ModelKind::cluster_ising_disordered) {
        const auto c = spec.couplings.empty() ? sample_disorder(spec.disorder, n, spec.seed) : spec.couplings;
        for (std::size_t l = 0; l + 1 < n; ++l) zz(l, c[l]);
      }
      break;
    }
    case ModelKind::tci: {
      const double g = spec.g;
      for (std::size_t l = 0; l < two; ++l) zz(l, 2.0 * (g * g - 1.0));
      field(-(g + 1.0) * (g + 1.0));
      for (std::size_t l = 0; l < three; ++l) zxz(l, (g - 1.0) * (g - 1.0));
      break;
    }
    case ModelKind::aklt: {
      // S.S + (S.S)^2/3 as a two-site 9x9 matrix, split into Kronecker pieces
      const double r = 1.0 / std::sqrt(2.0);
      RowMatrix sx = RowMatrix::Zero(3, 3), sy = RowMatrix::Zero(3, 3), sz = RowMatrix::Zero(3, 3);
      sx(0, 1) = sx(1, 0) = sx(1, 2) = sx(2, 1) = r;
      sy(0, 1) = -i * r;
      sy(1, 0) = i * r;
      sy(1, 2) = -i * r;
      sy(2, 1) = i * r;
      sz(0, 0) = 1;
      sz(2, 2) = -1;
      const RowMatrix* s[3] = {&sx, &sy, &sz};
      const double w = 1.0 - spec.delta;
      for (std::size_t l = 0; l + 1 < n; ++l) {
        for (int a = 0; a < 3; ++a) out.push_back({w, {{l, *s[a]}, {l + 1, *s[a]}}});
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            RowMatrix ab = (*s[a]) * (*s[b]);
            out.push_back({w / 3.0, {{l, ab}, {l + 1, ab}}});
          }
      }
      RowMatrix sz2 = sz * sz;
      for (std::size_t l = 0; l < n; ++l) out.push_back({spec.delta, {{l, sz2}}});
      break;
    }
  }
  return out;
}

RowMatrix dense_hamiltonian(const std::vector<Term>& terms, std::size_t length, std::size_t d) {
  const std::size_t dim = ipow(d, length);
  if (dim > 4096) throw CapacityError("dense_hamiltonian: dimension above 4096");
  RowMatrix h = RowMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const RowMatrix id = RowMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& t : terms) {
    std::vector<const RowMatrix*> at(length, &id);
    for (const auto& [site, op] : t.ops) at.at(site) = &op;
    RowMatrix k = RowMatrix::Ones(1, 1);
    for (std::size_t s = 0; s < length; ++s) {
      const RowMatrix& o = *at[s];
      RowMatrix next = RowMatrix::Zero(k.rows() * o.rows(), k.cols() * o.cols());
      for (Eigen::Index a = 0; a < k.rows(); ++a)
        for (Eigen::Index b = 0; b < k.cols(); ++b) {
          if (k(a, b) == cplx(0.0)) continue;
          next.block(a * o.rows(), b * o.cols(), o.rows(), o.cols()) = k(a, b) * o;
        }
      k = std::move(next);
    }
    h += t.coeff * k;
  }
  return h;
}

void apply_hamiltonian(const std::vector<Term>& terms, std::size_t length, std::size_t d, const ComplexVector& x,
                       ComplexVector& y) {
  y = ComplexVector::Zero(x.size());
  for (const auto& t : terms) {
    ComplexVector v = x;
    for (const auto& [site, op] : t.ops) v = apply_local(v, length, d, site, op);
    y += t.coeff * v;
  }
}

GroundState exact_ground_state(const RowMatrix& h, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  GroundState g;
  g.energy = es.eigenvalues()(0);
  g.vector = es.eigenvectors().col(0);
  g.degeneracy = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) - g.energy <= degeneracy_tol) ++g.degeneracy;
  return g;
}

GroundState exact_ground_state(const std::vector<Term>& terms, std::size_t length, std::size_t d,
                               double degeneracy_tol) {
  const std::size_t dim = ipow(d, length);
  if (dim <= 4096) return exact_ground_state(dense_hamiltonian(terms, length, d), degeneracy_tol);
  if (dim > (std::size_t{1} << 20)) throw CapacityError("exact_ground_state: dimension above 2^20");
  LinearMap apply = [&](const ComplexVector& in, ComplexVector& out) { apply_hamiltonian(terms, length, d, in, out); };
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  auto random_vec = [&] {
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (auto& c : v) c = cplx(nd(rng), nd(rng));
    return v;
  };
  LanczosOptions opt;
  opt.krylov_dim = 80;
  opt.max_restarts = 60;
  opt.tolerance = 1e-10;
  std::vector<ComplexVector> found;
  GroundState g;
  for (int level = 0; level < 8; ++level) {
    auto r = lanczos_lowest(apply, random_vec(), opt, found);
    if (!r.converged) throw NumericError("exact_ground_state: Lanczos did not converge");
    if (level == 0) {
      g.energy = r.value;
      g.vector = r.vector;
    } else if (r.value - g.energy > degeneracy_tol) {
      break;
    }
    found.push_back(r.vector);
  }
  g.degeneracy = found.size();
  return g;
}

}  // namespace topomagic::oracle

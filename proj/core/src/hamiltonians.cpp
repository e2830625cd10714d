#include "topomagic/hamiltonians.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "topomagic/errors.hpp"
#include "topomagic/pauli.hpp"

namespace topomagic {

namespace {

RowMatrix pauli(char c) {
  switch (c) {
    case 'I': return local_pauli(2, 0);
    case 'X': return local_pauli(2, 1);
    case 'Y': return local_pauli(2, 2);
    default: return local_pauli(2, 3);
  }
}

TermPattern uniform(std::vector<RowMatrix> ops, double c) {
  return {std::move(ops), [c](std::size_t) { return cplx(c); }};
}

const TruncationPolicy kExact{1024, 1e-28, false};

}  // namespace

ModelKind parse_model_kind(std::string_view t) {
  if (t == "tfim") return ModelKind::tfim;
  if (t == "cluster_ising" || t == "cluster") return ModelKind::cluster_ising;
  if (t == "cluster_ising_disordered" || t == "disordered") return ModelKind::cluster_ising_disordered;
  if (t == "tci") return ModelKind::tci;
  if (t == "aklt") return ModelKind::aklt;
  throw ConfigError("model", "unknown model kind '" + std::string(t) + "'");
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::tfim: return "tfim";
    case ModelKind::cluster_ising: return "cluster_ising";
    case ModelKind::cluster_ising_disordered: return "cluster_ising_disordered";
    case ModelKind::tci: return "tci";
    case ModelKind::aklt: return "aklt";
  }
  return "?";
}

void ModelSpec::validate() const {
  if (length < 4) throw ConfigError("L", "chain length must be at least 4");
  if (kind == ModelKind::cluster_ising_disordered) {
    if (disorder < 0) throw ConfigError("disorder", "must be non-negative");
    if (!couplings.empty()) {
      if (couplings.size() != length - 1) throw ConfigError("couplings", "need L-1 values");
      for (double c : couplings) {
        if (std::abs(c) > disorder + 1e-15) throw ConfigError("couplings", "|Delta_l| exceeds the disorder bound");
      }
    }
  }
  for (double v : {j, h, g, delta, disorder}) {
    if (!std::isfinite(v)) throw ConfigError("model", "non-finite parameter");
  }
}

RowMatrix spin1_sz() {
  RowMatrix m = RowMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

RowMatrix spin1_sx() {
  RowMatrix m = RowMatrix::Zero(3, 3);
  const double r = 1.0 / std::numbers::sqrt2;
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
  return m;
}

RowMatrix spin1_sy() {
  RowMatrix m = RowMatrix::Zero(3, 3);
  const cplx r(0.0, 1.0 / std::numbers::sqrt2);
  m(0, 1) = -r;
  m(1, 0) = r;
  m(1, 2) = -r;
  m(2, 1) = r;
  return m;
}

std::vector<double> sample_disorder(double bound, std::size_t length, std::uint64_t seed) {
  if (bound < 0) throw ConfigError("disorder", "must be non-negative");
  std::vector<double> out(length > 0 ? length - 1 : 0, 0.0);
  if (bound == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-bound, bound);
  for (auto& x : out) x = u(rng);
  return out;
}

Mpo build_mpo(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.length;
  const RowMatrix x = pauli('X'), z = pauli('Z');
  std::vector<TermPattern> terms;
  switch (spec.kind) {
    case ModelKind::tfim:
      terms.push_back(uniform({z, z}, -spec.j));
      terms.push_back(uniform({x}, -spec.h));
      break;
    case ModelKind::cluster_ising:
      terms.push_back(uniform({z, x, z}, spec.j));
      terms.push_back(uniform({x}, spec.h));
      break;
    case ModelKind::cluster_ising_disordered: {
      auto c = spec.couplings.empty() ? sample_disorder(spec.disorder, n, spec.seed) : spec.couplings;
      terms.push_back(uniform({z, x, z}, spec.j));
      terms.push_back(uniform({x}, spec.h));
      terms.push_back({{z, z}, [c](std::size_t l) { return cplx(c[l]); }});
      break;
    }
    case ModelKind::tci: {
      const double g = spec.g;
      terms.push_back(uniform({z, z}, 2.0 * (g * g - 1.0)));
      terms.push_back(uniform({x}, -(g + 1.0) * (g + 1.0)));
      terms.push_back(uniform({z, x, z}, (g - 1.0) * (g - 1.0)));
      break;
    }
    case ModelKind::aklt: {
      const double w = 1.0 - spec.delta;
      const std::vector<RowMatrix> s{spin1_sx(), spin1_sy(), spin1_sz()};
      for (const auto& a : s) terms.push_back(uniform({a, a}, w));
      // (S.S)^2 = sum_ab (S^a S^b) (x) (S^a S^b)
      for (const auto& a : s)
        for (const auto& b : s) {
          RowMatrix ab = a * b;
          terms.push_back(uniform({ab, ab}, w / 3.0));
        }
      RowMatrix sz2 = spin1_sz() * spin1_sz();
      terms.push_back(uniform({sz2}, spec.delta));
      break;
    }
  }
  return build_sum_mpo(n, spec.local_dim(), terms);
}

std::optional<Mpo> symmetry_tilt(const ModelSpec& spec) {
  const std::size_t n = spec.length;
  const RowMatrix x = pauli('X'), id = pauli('I');
  auto parity = [&](int which) {  // -1: all sites, 0: even sites, 1: odd sites
    std::vector<RowMatrix> ops;
    for (std::size_t i = 0; i < n; ++i) ops.push_back(which < 0 || static_cast<int>(i % 2) == which ? x : id);
    return product_mpo(ops);
  };
  switch (spec.kind) {
    case ModelKind::tfim:
    case ModelKind::tci:
    case ModelKind::cluster_ising_disordered:
      return parity(-1);
    case ModelKind::cluster_ising:
      return add(parity(0), parity(1));
    case ModelKind::aklt: {
      // pi rotations about x and z; the (+1, +1) sector holds the edge singlet
      // in the Haldane phase and |0...0> (even L) in the large-D phase.
      const RowMatrix sx = spin1_sx();
      const RowMatrix rx = RowMatrix::Identity(3, 3) - 2.0 * sx * sx;
      const RowMatrix rz = RowMatrix::Identity(3, 3) - 2.0 * spin1_sz() * spin1_sz();
      return add(product_mpo(std::vector<RowMatrix>(n, rx)), product_mpo(std::vector<RowMatrix>(n, rz)));
    }
  }
  return std::nullopt;
}

Mps ghz_state(std::size_t length) {
  if (length < 2) throw DimensionError("GHZ state needs L >= 2");
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t l = i == 0 ? 1 : 2, r = i + 1 == length ? 1 : 2;
    DenseTensor t({l, 2, r});
    for (std::size_t s = 0; s < 2; ++s) t({l == 1 ? 0 : s, s, r == 1 ? 0 : s}) = 1.0;
    ts.push_back(std::move(t));
  }
  return normalize(Mps(2, std::move(ts)));
}

Mps product_plus_state(std::size_t length) {
  const double r = 1.0 / std::numbers::sqrt2;
  const std::vector<cplx> plus{r, r};
  return normalize(Mps::product(length, plus));
}

Mps cluster_state(std::size_t length) {
  if (length < 4) throw DimensionError("cluster state needs L >= 4");
  // A^0 = [[0,0],[1,1]], A^1 = [[1,-1],[0,0]]; boundaries (1,0) and (1,-1)^T.
  const cplx a[2][2][2] = {{{0, 0}, {1, 1}}, {{1, -1}, {0, 0}}};
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) {
    const bool first = i == 0, last = i + 1 == length;
    DenseTensor t({first ? 1u : 2u, 2, last ? 1u : 2u});
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q) {
          if (first && p != 0) continue;
          const cplx right = q == 0 ? 1.0 : -1.0;
          if (last) {
            t({first ? 0 : p, s, 0}) += a[s][p][q] * right;
          } else {
            t({first ? 0 : p, s, q}) = a[s][p][q];
          }
        }
    ts.push_back(std::move(t));
  }
  const Mps psi0(2, std::move(ts));
  const RowMatrix x = pauli('X');
  auto flip = [&](Mps m, std::size_t parity) {
    for (std::size_t i = parity; i < length; i += 2) m = apply_site_operator(std::move(m), i, x);
    return m;
  };
  Mps sum;
  if (length % 2 == 0) {
    sum = superpose(superpose(psi0, flip(psi0, 0)), superpose(flip(psi0, 1), flip(flip(psi0, 0), 1)));
  } else {
    sum = superpose(psi0, flip(flip(psi0, 0), 1));
  }
  return normalize(compress(normalize(std::move(sum)), kExact).state);
}

Mps tci_ground_state(std::size_t length, double g, bool doped) {
  if (length < 2 || length % 2 != 0) throw DimensionError("TCI MPS is defined for even L");
  const cplx ph = doped ? std::polar(1.0, std::numbers::pi / 4.0) : cplx(1.0);
  // A^0 = [[0,0],[1,1]], A^1 = ph [[1,g],[0,0]]; psi = tr(A...A).
  // The boundary matrix Z would put the state in the odd-parity sector,
  // orthogonal to the cluster/GHZ/paramagnet references.
  const cplx a[2][2][2] = {{{0, 0}, {1, 1}}, {{ph, g * ph}, {0, 0}}};
  const double zk[2] = {1.0, 1.0};
  // Bond index (k, j): k remembers the trace row, j is the running matrix index.
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) {
    const bool first = i == 0, last = i + 1 == length;
    DenseTensor t({first ? 1u : 4u, 2, last ? 1u : 4u});
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t p = 0; p < 2; ++p)
          for (std::size_t q = 0; q < 2; ++q) {
            if (first && p != k) continue;
            if (last && q != k) continue;
            const cplx v = a[s][p][q] * (first ? zk[k] : 1.0);
            t({first ? 0 : 2 * k + p, s, last ? 0 : 2 * k + q}) += v;
          }
    ts.push_back(std::move(t));
  }
  Mps psi(2, std::move(ts));
  // Norm check against N_m = ((1+g)^L + (1-g)^L)/2, i.e. <psi|psi> = 2 N_m.
  const double nm = (std::pow(1.0 + g, static_cast<double>(length)) + std::pow(1.0 - g, static_cast<double>(length))) / 2.0;
  const double nrm2 = overlap(psi, psi).real();
  if (std::abs(nrm2 - 2.0 * nm) > 1e-9 * std::max(1.0, 2.0 * nm)) {
    throw NumericError("TCI MPS norm disagrees with 2 N_m");
  }
  psi = normalize(compress(normalize(std::move(psi)), kExact).state);

  auto check = [&](const Mps& ref, const char* what) {
    Mps plain = doped ? tci_ground_state(length, g, false) : psi;
    if (std::abs(std::abs(overlap(ref, plain)) - 1.0) > 1e-10) {
      throw NumericError(std::string("TCI MPS does not reduce to the ") + what + " state");
    }
  };
  if (g == -1.0) check(cluster_state(length), "cluster");
  if (g == 0.0) check(ghz_state(length), "GHZ");
  if (g == 1.0) check(product_plus_state(length), "paramagnetic");
  return psi;
}

Mps aklt_state(std::size_t length) {
  if (length < 2) throw DimensionError("AKLT state needs L >= 2");
  // A^+ = sqrt(2/3) s^+, A^0 = -sqrt(1/3) s^z, A^- = -sqrt(2/3) s^-
  cplx a[3][2][2] = {};
  a[0][0][1] = std::sqrt(2.0 / 3.0);
  a[1][0][0] = -std::sqrt(1.0 / 3.0);
  a[1][1][1] = std::sqrt(1.0 / 3.0);
  a[2][1][0] = -std::sqrt(2.0 / 3.0);
  // The trace is carried on a bond (k, b): k remembers the left index.
  std::vector<DenseTensor> ts;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t l = i == 0 ? 1 : 4, r = i + 1 == length ? 1 : 4;
    DenseTensor t({l, 3, r});
    for (std::size_t s = 0; s < 3; ++s)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t c = 0; c < 2; ++c) {
            if (i == 0) {
              if (b == k) t({0, s, k * 2 + c}) += a[s][b][c];
            } else if (i + 1 < length) {
              t({k * 2 + b, s, k * 2 + c}) += a[s][b][c];
            } else if (c == k) {
              t({k * 2 + b, s, 0}) += a[s][b][c];
            }
          }
    ts.push_back(std::move(t));
  }
  return normalize(compress(Mps(3, std::move(ts)), {16, 1e-14, false}).state);
}

}  // namespace topomagic

#include <cmath>
#include <random>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/oracle.hpp"
#include "topomagic/pauli_mps.hpp"

using namespace topomagic;

namespace {
const double kT = std::log2(4.0 / 3.0);

SreOptions exact() {
  SreOptions o;
  o.policy = {1u << 20, 0.0, false};
  return o;
}

std::vector<std::size_t> digits(std::size_t idx, std::size_t n, std::size_t base) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = idx % base;
    idx /= base;
  }
  return out;
}
}  // namespace

TEST_CASE("Pauli MPS amplitudes are <P> / sqrt(d)^L") {
  for (std::size_t d : {2, 3}) {
    std::mt19937_64 rng(31);
    const std::size_t n = d == 2 ? 5 : 3;
    auto psi = Mps::random(n, d, 4, rng);
    auto p = build_pauli_mps(psi);
    const auto ref = oracle::pauli_expectations(oracle::statevector(psi), n, d);
    const double scale = std::pow(std::sqrt(static_cast<double>(d)), static_cast<double>(n));
    for (std::size_t a = 0; a < ref.size(); a += 7)
      CHECK(std::abs(amplitude(p, digits(a, n, d * d)) * scale - ref[a]) < 1e-12);
    // unit norm for a pure state
    CHECK(log_norm_squared(p) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("streamed builder agrees with the explicit one") {
  std::mt19937_64 rng(32);
  auto psi = Mps::random(7, 2, 6, rng);
  const SiteSet region{1, 2, 5};
  auto a = build_pauli_mps(psi, region);
  auto b = build_compressed_pauli_mps(psi, region, {1u << 20, 0.0, true});
  CHECK(b.discarded_weight < 1e-20);
  for (std::size_t k = 0; k < 64; ++k) {
    std::vector<std::size_t> lab(7, 0);
    lab[1] = k % 4, lab[2] = (k / 4) % 4, lab[5] = k / 16;
    CHECK(std::abs(amplitude(a, lab) - amplitude(b.state, lab)) < 1e-12);
  }
}

TEST_CASE("SRE of stabilizer states vanishes; T-doped GHZ follows the parity rule") {
  CHECK(std::abs(full_state_sre(cluster_state(10), 2)) < 1e-10);
  CHECK(std::abs(full_state_sre(ghz_state(9), 2)) < 1e-10);
  for (std::size_t n : {5, 6, 9, 12}) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const double want = n % 2 ? kT : 0.0;
    CHECK(full_state_sre(dope_with_t_gates(ghz_state(n), all), 2) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("full and subsystem SRE match enumeration, qubits and qutrits") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 6; ++k) {
    const std::size_t d = k < 4 ? 2 : 3, n = d == 2 ? 6 : 4;
    auto psi = Mps::random(n, d, 5, rng);
    const auto v = oracle::statevector(psi);
    for (int rep : {2, 3}) {
      CHECK(full_state_sre(psi, rep, exact()) == doctest::Approx(oracle::exact_sre(v, n, d, rep)).epsilon(1e-9));
      const SiteSet r{0, 2};
      CHECK(subsystem_sre(psi, r, rep, exact()).value ==
            doctest::Approx(oracle::exact_sre(v, n, d, rep, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("bond cap is reported as discarded weight") {
  std::mt19937_64 rng(34);
  auto psi = Mps::random(10, 2, 8, rng);
  SreOptions o;
  o.policy = {4, 0.0, true};
  o.alarm = 1e-12;
  auto r = subsystem_sre(psi, {0, 1, 2, 3, 4, 5}, 2, o);
  CHECK(r.chi_p <= 4);
  CHECK(r.discarded > 0.0);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("topological SRE of the fully doped cluster state") {
  std::vector<std::size_t> all(12);
  for (std::size_t i = 0; i < 12; ++i) all[i] = i;
  auto psi = dope_with_t_gates(cluster_state(12), all);
  auto r = topological_sre(psi, PartitionSpec::quad(12), 2);
  CHECK(r.m_topo == doctest::Approx(2 * kT).epsilon(1e-9));
  auto par = r;
  SreOptions o;
  o.parallel = true;
  par = topological_sre(psi, PartitionSpec::quad(12), 2, o);
  for (std::size_t k = 0; k < 4; ++k) CHECK(par.values[k] == doctest::Approx(r.values[k]).epsilon(1e-12));
}

TEST_CASE("contract violations") {
  std::mt19937_64 rng(35);
  auto psi = Mps::random(4, 2, 2, rng);
  CHECK_THROWS_AS(subsystem_sre(psi, {0}, 1), ContractViolation);
  auto big = psi;
  big.mutable_site(0) *= cplx(2.0);
  CHECK_THROWS_AS(build_pauli_mps(big), ContractViolation);
  CHECK_THROWS_AS(topological_sre(psi, PartitionSpec::quad(8), 2), DimensionError);
}

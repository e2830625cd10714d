#include <random>

#include "doctest.h"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/mps.hpp"
#include "topomagic/oracle.hpp"

using namespace topomagic;

TEST_CASE("random states are normalized and bond dims are capped") {
  std::mt19937_64 rng(7);
  auto psi = Mps::random(8, 2, 5, rng);
  CHECK(norm(psi) == doctest::Approx(1.0));
  CHECK(psi.bond_dim(1) == 2);
  CHECK(psi.bond_dim(4) == 5);
  CHECK(psi.bond_dim(8) == 1);
}

TEST_CASE("canonical forms and compression leave the state unchanged") {
  std::mt19937_64 rng(8);
  auto psi = Mps::random(7, 2, 6, rng);
  const auto v = oracle::statevector(psi);
  for (std::size_t c : {0, 3, 6}) {
    auto phi = canonicalize(psi, c);
    CHECK(phi.ortho_center() == c);
    CHECK((oracle::statevector(phi) - v).norm() < 1e-12);
  }
  auto r = compress(psi, {64, 0.0, false});
  CHECK(r.discarded_weight < 1e-20);
  CHECK(std::abs(overlap(r.state, psi)) == doctest::Approx(1.0));
}

TEST_CASE("GHZ entanglement and phase-gate invariance of spectra") {
  auto ghz = ghz_state(6);
  CHECK(entanglement_entropy(ghz, 3) == doctest::Approx(1.0));
  std::mt19937_64 rng(9);
  auto psi = Mps::random(6, 2, 4, rng);
  auto doped = psi;
  for (std::size_t i = 0; i < 6; ++i) doped = apply_phase_gate(std::move(doped), i, 0.37 * (i + 1));
  for (std::size_t cut = 1; cut < 6; ++cut) {
    auto a = bond_spectrum(psi, cut), b = bond_spectrum(doped, cut);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
  }
}

TEST_CASE("T doping applies diag(1, e^{i pi/4}) on the listed sites") {
  auto plus = product_plus_state(3);
  const std::size_t sites[] = {1};
  auto v = oracle::statevector(dope_with_t_gates(plus, sites));
  // amplitude of |010> relative to |000>
  CHECK(std::abs(v(2) / v(0) - std::polar(1.0, M_PI / 4)) < 1e-12);
  CHECK(std::abs(v(5) / v(0) - 1.0) < 1e-12);
}

TEST_CASE("superpose adds states") {
  auto a = Mps::product(3, std::vector<cplx>{1.0, 0.0});
  auto b = Mps::product(3, std::vector<cplx>{0.0, 1.0});
  auto s = normalize(superpose(a, b));
  CHECK(std::abs(overlap(s, ghz_state(3))) == doctest::Approx(1.0));
}

TEST_CASE("expectations of Pauli strings") {
  auto c = cluster_state(8);
  CHECK(expect_pauli(c, PauliString::parse("Z:2 X:3 Z:4", 2)).real() == doctest::Approx(-1.0));
  CHECK(std::abs(expect_pauli(c, PauliString::parse("X:3", 2))) < 1e-12);
}

TEST_CASE("subsystem entropy matches the dense reduced density matrix") {
  std::mt19937_64 rng(10);
  auto psi = Mps::random(7, 2, 4, rng);
  const SiteSet region{0, 2, 5};
  CHECK(subsystem_entropy(psi, region) ==
        doctest::Approx(oracle::entropy(oracle::statevector(psi), 7, 2, region)).epsilon(1e-10));
}

#include <cmath>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/mpo.hpp"
#include "topomagic/oracle.hpp"

using namespace topomagic;

TEST_CASE("cluster state has ZXZ = -1 on every interior site") {
  for (std::size_t n : {6, 7, 8}) {
    auto c = cluster_state(n);
    CHECK(norm(c) == doctest::Approx(1.0));
    CHECK(c.max_bond_dim() <= 4);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      PauliString p;
      p.ops = {{i - 1, 3}, {i, 1}, {i + 1, 3}};
      CHECK(expect_pauli(c, p).real() == doctest::Approx(-1.0));
    }
  }
}

TEST_CASE("cluster state is the ground state of the h=0 cluster-Ising chain") {
  ModelSpec s;
  s.kind = ModelKind::cluster_ising;
  s.length = 8;
  const auto ed = oracle::exact_ground_state(oracle::model_terms(s), 8, 2);
  CHECK(expectation(cluster_state(8), build_mpo(s)) == doctest::Approx(ed.energy));
}

TEST_CASE("TCI exact MPS is a ground state of the periodic chain") {
  for (double g : {-0.6, 0.0, 0.45}) {
    CAPTURE(g);
    ModelSpec s;
    s.kind = ModelKind::tci;
    s.length = 8;
    s.g = g;
    const auto terms = oracle::model_terms(s, true);
    const auto ed = oracle::exact_ground_state(terms, 8, 2);
    const auto v = oracle::statevector(tci_ground_state(8, g, false));
    ComplexVector hv(v.size());
    oracle::apply_hamiltonian(terms, 8, 2, v, hv);
    CHECK(v.dot(hv).real() == doctest::Approx(ed.energy).epsilon(1e-10));
    CHECK((hv - ed.energy * v).norm() < 1e-8);
  }
  CHECK_THROWS(tci_ground_state(7, 0.1, false));
}

TEST_CASE("doped TCI MPS equals T gates on every site") {
  auto a = tci_ground_state(6, 0.3, true);
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  auto b = dope_with_t_gates(tci_ground_state(6, 0.3, false), all);
  CHECK(std::abs(overlap(a, b)) == doctest::Approx(1.0));
}

TEST_CASE("AKLT valence-bond state has energy -2/3 per bond") {
  ModelSpec s;
  s.kind = ModelKind::aklt;
  s.length = 10;
  auto psi = aklt_state(10);
  CHECK(norm(psi) == doctest::Approx(1.0));
  CHECK(expectation(psi, build_mpo(s)) == doctest::Approx(-2.0 / 3.0 * 9));
  CHECK(expectation_squared(psi, build_mpo(s)) == doctest::Approx(4.0 / 9.0 * 81));
}

TEST_CASE("spin-1 operators obey the commutation relations") {
  auto x = spin1_sx(), y = spin1_sy(), z = spin1_sz();
  CHECK((x * y - y * x - cplx(0, 1) * z).norm() < 1e-12);
  CHECK((x * x + y * y + z * z - 2.0 * RowMatrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("disorder samples are reproducible and bounded") {
  auto a = sample_disorder(0.7, 12, 3), b = sample_disorder(0.7, 12, 3), c = sample_disorder(0.7, 12, 4);
  CHECK(a.size() == 11);
  CHECK(a == b);
  CHECK(a != c);
  for (double x : a) CHECK(std::abs(x) <= 0.7);
}

TEST_CASE("symmetry tilts commute with the Hamiltonian") {
  for (auto kind : {ModelKind::tfim, ModelKind::cluster_ising, ModelKind::aklt}) {
    ModelSpec s;
    s.kind = kind;
    s.length = kind == ModelKind::aklt ? 4 : 6;
    s.h = 0.4;
    s.delta = 0.2;
    auto t = symmetry_tilt(s);
    REQUIRE(t.has_value());
    RowMatrix h = to_dense(build_mpo(s)), q = to_dense(*t);
    CHECK((h * q - q * h).norm() < 1e-10);
  }
}

TEST_CASE("model validation") {
  ModelSpec s;
  s.length = 1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  CHECK(parse_model_kind("aklt") == ModelKind::aklt);
  CHECK_THROWS(parse_model_kind("heisenberg"));
}

#include <cmath>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/ground_state.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/oracle.hpp"

using namespace topomagic;

TEST_CASE("DMRG reaches the exact ground energy") {
  for (double h : {0.5, 1.0, 1.7}) {
    ModelSpec s;
    s.kind = ModelKind::tfim;
    s.length = 8;
    s.h = h;
    SolverConfig c;
    c.max_bond = 32;
    auto r = find_ground_state(build_mpo(s), c);
    const auto ed = oracle::exact_ground_state(oracle::model_terms(s), 8, 2);
    CHECK(r.converged);
    CHECK(r.energy == doctest::Approx(ed.energy).epsilon(1e-10));
    CHECK(r.variance < 1e-8);
    CHECK(norm(r.state) == doctest::Approx(1.0));
  }
}

TEST_CASE("symmetry tilt selects the even GHZ-like state in the ordered phase") {
  ModelSpec s;
  s.kind = ModelKind::tfim;
  s.length = 10;
  s.h = 0.3;
  SolverConfig c;
  c.tilt = 1e-3;
  auto r = find_ground_state(build_mpo(s), c, std::nullopt, symmetry_tilt(s));
  PauliString parity;
  for (std::size_t i = 0; i < 10; ++i) parity.ops[i] = 1;  // X on every site
  CHECK(expect_pauli(r.state, parity).real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(entanglement_entropy(r.state, 5) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spin-1 DMRG at the AKLT point") {
  ModelSpec s;
  s.kind = ModelKind::aklt;
  s.length = 8;
  SolverConfig c;
  c.max_bond = 16;
  auto r = find_ground_state(build_mpo(s), c);
  CHECK(r.energy == doctest::Approx(-2.0 / 3.0 * 7).epsilon(1e-9));
}

TEST_CASE("invalid solver settings are rejected") {
  SolverConfig c;
  c.max_bond = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

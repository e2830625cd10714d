#include <random>

#include "doctest.h"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/mpo.hpp"
#include "topomagic/oracle.hpp"

using namespace topomagic;

TEST_CASE("MPO of every model equals the independently written dense Hamiltonian") {
  std::vector<ModelSpec> specs(5);
  specs[0].kind = ModelKind::tfim, specs[0].h = 0.7;
  specs[1].kind = ModelKind::cluster_ising, specs[1].h = 0.3, specs[1].j = 1.2;
  specs[2].kind = ModelKind::cluster_ising_disordered, specs[2].h = 0.4, specs[2].disorder = 0.8, specs[2].seed = 5;
  specs[3].kind = ModelKind::tci, specs[3].g = -0.35;
  specs[4].kind = ModelKind::aklt, specs[4].delta = 0.3, specs[4].length = 5;
  for (auto s : specs) {
    CAPTURE(to_string(s.kind));
    if (s.kind != ModelKind::aklt) s.length = 6;
    if (s.kind == ModelKind::cluster_ising_disordered) s.couplings = sample_disorder(s.disorder, s.length, s.seed);
    const Mpo h = build_mpo(s);
    CHECK(is_hermitian(h));
    const RowMatrix ref = oracle::dense_hamiltonian(oracle::model_terms(s), s.length, s.local_dim());
    CHECK((to_dense(h) - ref).norm() < 1e-10);
  }
}

TEST_CASE("expectation and variance against dense algebra") {
  ModelSpec s;
  s.kind = ModelKind::tfim;
  s.length = 6;
  s.h = 0.9;
  const Mpo h = build_mpo(s);
  std::mt19937_64 rng(13);
  auto psi = Mps::random(6, 2, 4, rng);
  const auto v = oracle::statevector(psi);
  const RowMatrix hd = to_dense(h);
  const double e = (v.adjoint() * hd * v)(0).real();
  CHECK(expectation(psi, h) == doctest::Approx(e).epsilon(1e-12));
  CHECK(expectation_squared(psi, h) == doctest::Approx((v.adjoint() * hd * hd * v)(0).real()).epsilon(1e-12));
}

TEST_CASE("product_mpo and add") {
  RowMatrix z = RowMatrix::Zero(2, 2);
  z(0, 0) = 1, z(1, 1) = -1;
  RowMatrix id = RowMatrix::Identity(2, 2);
  auto a = product_mpo({z, z, z});
  auto b = product_mpo({id, id, id});
  auto s = add(a, b, 2.0, -1.0);
  RowMatrix ref = -RowMatrix::Identity(8, 8);
  for (int k = 0; k < 8; ++k) ref(k, k) += 2.0 * ((__builtin_popcount(k) % 2) ? -1.0 : 1.0);
  CHECK((to_dense(s) - ref).norm() < 1e-12);
}

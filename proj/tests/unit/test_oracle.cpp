#include <random>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/oracle.hpp"
#include "topomagic/pauli.hpp"

using namespace topomagic;

TEST_CASE("statevector ordering: site 0 is the most significant digit") {
  auto psi = Mps::product(3, std::vector<cplx>{0.0, 1.0});
  auto v = oracle::statevector(apply_site_operator(Mps::product(3, std::vector<cplx>{1.0, 0.0}), 0, local_pauli(2, 1)));
  CHECK(std::abs(v(4) - 1.0) < 1e-12);
  CHECK(std::abs(oracle::statevector(psi)(7) - 1.0) < 1e-12);
}

TEST_CASE("Pauli spectrum of a pure state sums to d^L") {
  std::mt19937_64 rng(51);
  for (std::size_t d : {2, 3}) {
    auto psi = Mps::random(4, d, 3, rng);
    auto e = oracle::pauli_expectations(oracle::statevector(psi), 4, d);
    double s = 0;
    for (auto x : e) s += std::norm(x);
    CHECK(s == doctest::Approx(std::pow(double(d), 4)));
  }
}

TEST_CASE("stabilizer states have zero SRE, pure and mixed") {
  auto v = oracle::statevector(cluster_state(8));
  CHECK(std::abs(oracle::exact_sre(v, 8, 2, 2)) < 1e-10);
  CHECK(std::abs(oracle::exact_sre(v, 8, 2, 2, SiteSet{1, 2, 3})) < 1e-10);
  CHECK(std::abs(oracle::exact_sre(v, 8, 2, 3, SiteSet{0, 5})) < 1e-10);
}

TEST_CASE("capacity limits are enforced") {
  ComplexVector v = ComplexVector::Zero(1 << 11);
  v(0) = 1;
  CHECK_THROWS_AS(oracle::exact_sre(v, 11, 2, 2), CapacityError);
}

TEST_CASE("dense and Lanczos ground states") {
  ModelSpec s;
  s.kind = ModelKind::cluster_ising;
  s.length = 8;
  s.h = 0.8;
  const auto dense = oracle::exact_ground_state(oracle::dense_hamiltonian(oracle::model_terms(s), 8, 2));
  CHECK(dense.energy == doctest::Approx(oracle::exact_ground_state(oracle::model_terms(s), 8, 2).energy).epsilon(1e-12));

  s.length = 13;  // above the dense limit
  const auto terms = oracle::model_terms(s);
  const auto big = oracle::exact_ground_state(terms, 13, 2);
  ComplexVector hv(big.vector.size());
  oracle::apply_hamiltonian(terms, 13, 2, big.vector, hv);
  CHECK(big.vector.norm() == doctest::Approx(1.0));
  CHECK((hv - big.energy * big.vector).norm() < 1e-7);
}

TEST_CASE("reduced density matrices are normalized and Hermitian") {
  std::mt19937_64 rng(52);
  auto v = oracle::statevector(Mps::random(6, 2, 4, rng));
  auto rho = oracle::reduced_density_matrix(v, 6, 2, SiteSet{1, 4});
  CHECK(rho.trace().real() == doctest::Approx(1.0));
  CHECK((rho - rho.adjoint()).norm() < 1e-12);
}

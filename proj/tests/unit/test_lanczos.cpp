#include <random>

#include "doctest.h"
#include "topomagic/lanczos.hpp"

using namespace topomagic;

namespace {
RowMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RowMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}
}  // namespace

TEST_CASE("lowest eigenpair of a random Hermitian matrix") {
  std::mt19937_64 rng(21);
  const RowMatrix h = random_hermitian(120, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  LinearMap apply = [&](const ComplexVector& x, ComplexVector& y) { y = h * x; };
  ComplexVector start = ComplexVector::Random(120);
  LanczosOptions opt;
  auto r = lanczos_lowest(apply, start, opt);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
  CHECK((h * r.vector - r.value * r.vector).norm() < 1e-8);

  // Deflating the ground state yields the first excited level.
  auto r2 = lanczos_lowest(apply, start, opt, {r.vector});
  CHECK(r2.value == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-10));
}

TEST_CASE("one-dimensional space") {
  LinearMap apply = [](const ComplexVector& x, ComplexVector& y) { y = 3.0 * x; };
  ComplexVector start = ComplexVector::Ones(1);
  auto r = lanczos_lowest(apply, start, {});
  CHECK(r.value == doctest::Approx(3.0));
}

#include <random>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/tensor.hpp"

using namespace topomagic;

namespace {
RowMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RowMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}
}  // namespace

TEST_CASE("contract matches a matrix product") {
  std::mt19937_64 rng(1);
  auto a = DenseTensor::random({3, 4, 5}, rng);
  auto b = DenseTensor::random({5, 2}, rng);
  auto c = contract(a, {2}, b, {0});
  REQUIRE(c.shape() == Shape{3, 4, 2});
  RowMatrix ref = a.matrix(2) * b.matrix(1);
  CHECK((c.matrix(2) - ref).norm() < 1e-12);
}

TEST_CASE("permute and reshape round trip") {
  std::mt19937_64 rng(2);
  auto a = DenseTensor::random({2, 3, 4}, rng);
  const std::size_t perm[] = {2, 0, 1}, back[] = {1, 2, 0};
  auto p = a.permuted(perm);
  CHECK(p.shape() == Shape{4, 2, 3});
  CHECK(p({3, 1, 2}) == a({1, 2, 3}));
  auto q = p.permuted(back);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(q.data()[i] == a.data()[i]);
  CHECK_THROWS_AS(a.reshaped({5, 5}), DimensionError);
}

TEST_CASE("svd_truncate reconstructs and reports discarded weight") {
  std::mt19937_64 rng(3);
  auto t = DenseTensor::random({4, 3, 6}, rng);
  auto f = svd_truncate(t, {0, 1}, TruncationPolicy{100, 0.0, false});
  CHECK(f.discarded_weight == doctest::Approx(0.0));
  DenseTensor us = f.u;
  const std::size_t k = f.s.size();
  for (std::size_t i = 0; i < us.size(); ++i) us.data()[i] *= f.s[i % k];
  auto back = contract(us, {2}, f.v, {0});
  CHECK((back.matrix(2) - t.matrix(2)).norm() < 1e-12 * t.norm());

  auto g = svd_truncate(t, {0, 1}, TruncationPolicy{2, 0.0, false});
  CHECK(g.s.size() == 2);
  double tot = 0, kept = 0;
  for (double s : f.s) tot += s * s;
  for (double s : g.s) kept += s * s;
  CHECK(g.discarded_weight == doctest::Approx((tot - kept) / tot));
}

TEST_CASE("truncation_rank keeps degenerate multiplets together") {
  const double s[] = {1.0, 0.5, 0.5, 0.5, 0.1};
  CHECK(truncation_rank(s, {2, 0.0, false}) == 1);
  CHECK(truncation_rank(s, {4, 0.0, false}) == 4);
  CHECK(truncation_rank(s, {10, 0.05, false}) == 4);
  double dw = 0;
  truncation_rank(s, {10, 0.0, false}, &dw);
  CHECK(dw == doctest::Approx(0.0));
}

TEST_CASE("matrix_svd is accurate on exactly degenerate spectra") {
  // Blocks of repeated singular values, scrambled by unitaries.
  std::mt19937_64 rng(4);
  const Eigen::Index n = 48;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qa(random_matrix(n, n, rng)), qb(random_matrix(n, n, rng));
  Eigen::MatrixXcd ua = qa.householderQ(), ub = qb.householderQ();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = i < 16 ? 1.0 : (i < 40 ? 0.25 : 0.0);
  RowMatrix m = ua * d.cast<cplx>().asDiagonal() * ub.adjoint();
  auto f = matrix_svd(m);
  CHECK((f.u * f.s.cast<cplx>().asDiagonal() * f.v - m).norm() < 1e-10);
  CHECK(f.s(0) == doctest::Approx(1.0));
  CHECK(f.s(20) == doctest::Approx(0.25));
}

TEST_CASE("qr and lq give orthonormal factors") {
  std::mt19937_64 rng(5);
  auto t = DenseTensor::random({3, 2, 5}, rng);
  auto [q, r] = qr(t, 2);
  RowMatrix qm = q.matrix(2);
  CHECK((qm.adjoint() * qm - RowMatrix::Identity(qm.cols(), qm.cols())).norm() < 1e-12);
  CHECK((contract(q, {2}, r, {0}).matrix(2) - t.matrix(2)).norm() < 1e-12);
  auto [l, w] = lq(t, 1);
  RowMatrix wm = w.matrix(1);
  CHECK((wm * wm.adjoint() - RowMatrix::Identity(wm.rows(), wm.rows())).norm() < 1e-12);
}

TEST_CASE("non-finite input is rejected") {
  DenseTensor t({2, 2});
  t({0, 0}) = std::nan("");
  CHECK_THROWS_AS(svd_truncate(t, {0}, {}), NumericError);
}

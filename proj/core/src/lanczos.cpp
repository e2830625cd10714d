#include "topomagic/lanczos.hpp"

#include <cmath>

#include "topomagic/errors.hpp"

namespace topomagic {

namespace {

void project_out(ComplexVector& v, const std::vector<ComplexVector>& basis, std::size_t count) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t k = 0; k < count; ++k) v -= basis[k] * basis[k].dot(v);
}

}  // namespace

LanczosResult lanczos_lowest(const LinearMap& apply, ComplexVector start, const LanczosOptions& opt,
                             const std::vector<ComplexVector>& deflate) {
  const Eigen::Index n = start.size();
  if (n == 0) throw DimensionError("lanczos: empty start vector");
  LanczosResult res;
  auto clean = [&](ComplexVector& v) { project_out(v, deflate, deflate.size()); };
  clean(start);
  if (start.norm() < 1e-14) {
    start = ComplexVector::Ones(n);
    clean(start);
    if (start.norm() < 1e-14) throw DegenerateStateError("lanczos: start vector lies in the deflated space");
  }
  start.normalize();

  ComplexVector w(n);
  for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
    const int m = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, n - static_cast<Eigen::Index>(deflate.size())));
    std::vector<ComplexVector> basis{start};
    std::vector<double> alpha, beta;
    double last_beta = 0.0;
    for (int j = 0; j < std::max(m, 1); ++j) {
      apply(basis[j], w);
      ++res.matvecs;
      clean(w);
      alpha.push_back(basis[j].dot(w).real());
      project_out(w, basis, basis.size());
      last_beta = w.norm();
      if (j + 1 >= m || last_beta < 1e-13) break;
      beta.push_back(last_beta);
      basis.push_back(w / last_beta);
    }
    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) t(i, i) = alpha[i];
    for (int i = 0; i + 1 < k; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    ComplexVector v = ComplexVector::Zero(n);
    for (int i = 0; i < k; ++i) v += y(i) * basis[i];
    v.normalize();
    res.value = es.eigenvalues()(0);
    res.vector = v;
    res.residual = std::abs(last_beta * y(k - 1));
    if (res.residual <= opt.tolerance || last_beta < 1e-13) {
      res.converged = true;
      return res;
    }
    start = v;
  }
  return res;
}

}  // namespace topomagic

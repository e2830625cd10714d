#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace topomagic {

using cplx = std::complex<double>;
using Shape = std::vector<std::size_t>;
using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

/// Dense complex tensor stored in row-major order (last index fastest).
///
/// Reshapes never touch the data; permutations copy. The matrix() views
/// reinterpret the leading `row_axes` indices as rows and the rest as columns.
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(Shape shape);
  DenseTensor(Shape shape, std::vector<cplx> data);

  static DenseTensor random(Shape shape, std::mt19937_64& rng);
  static DenseTensor from_matrix(const RowMatrix& m);

  std::size_t rank() const noexcept { return shape_.size(); }
  const Shape& shape() const noexcept { return shape_; }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<cplx> values() noexcept { return data_; }
  std::span<const cplx> values() const noexcept { return data_; }
  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  cplx& operator()(std::initializer_list<std::size_t> index);
  const cplx& operator()(std::initializer_list<std::size_t> index) const;

  DenseTensor reshaped(Shape shape) const&;
  DenseTensor reshaped(Shape shape) &&;
  DenseTensor permuted(std::span<const std::size_t> perm) const;
  DenseTensor permuted(std::initializer_list<std::size_t> perm) const {
    return permuted(std::span<const std::size_t>(perm.begin(), perm.size()));
  }
  DenseTensor conj() const;

  DenseTensor& operator*=(cplx factor);
  double norm() const;
  bool all_finite() const;

  Eigen::Map<RowMatrix> matrix(std::size_t row_axes);
  Eigen::Map<const RowMatrix> matrix(std::size_t row_axes) const;

 private:
  std::size_t flat_index(std::initializer_list<std::size_t> index) const;

  Shape shape_;
  std::vector<cplx> data_;
};

std::size_t shape_product(std::span<const std::size_t> extents);

/// Sum over matched index pairs. Result indices: free indices of `a` in
/// order, then free indices of `b` in order. Throws DimensionError on
/// mismatched extents, out-of-range or duplicate axes.
DenseTensor contract(const DenseTensor& a, std::span<const std::size_t> axes_a,
                     const DenseTensor& b, std::span<const std::size_t> axes_b);
inline DenseTensor contract(const DenseTensor& a, std::initializer_list<std::size_t> axes_a,
                            const DenseTensor& b, std::initializer_list<std::size_t> axes_b) {
  return contract(a, std::span<const std::size_t>(axes_a.begin(), axes_a.size()), b,
                  std::span<const std::size_t>(axes_b.begin(), axes_b.size()));
}

/// Bond truncation rule shared by every SVD in the library.
///
/// Singular values with s_k^2 / sum(s^2) < cutoff are dropped, at most
/// max_bond are kept, and a degenerate multiplet straddling the cut is
/// dropped as a whole.
struct TruncationPolicy {
  std::size_t max_bond = 64;
  double cutoff = 0.0;
  bool renormalize = false;
};

/// Relative gap below which neighbouring singular values count as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Number of singular values (sorted descending) to keep under `policy`.
/// Writes the relative discarded weight to `discarded` when non-null.
std::size_t truncation_rank(std::span<const double> singular_values,
                            const TruncationPolicy& policy, double* discarded = nullptr);

struct SvdResult {
  DenseTensor u;  // row extents..., k
  std::vector<double> s;
  DenseTensor v;  // k, column extents...
  double discarded_weight = 0.0;
};

/// Truncated SVD of `t` viewed as a matrix with `row_axes` as rows and the
/// remaining axes (in their original order) as columns.
SvdResult svd_truncate(const DenseTensor& t, std::span<const std::size_t> row_axes,
                       const TruncationPolicy& policy);
inline SvdResult svd_truncate(const DenseTensor& t, std::initializer_list<std::size_t> row_axes,
                              const TruncationPolicy& policy) {
  return svd_truncate(t, std::span<const std::size_t>(row_axes.begin(), row_axes.size()), policy);
}

/// Thin QR of the matrix formed by the first `row_axes` indices.
/// q: row extents..., k; r: k, column extents... with k = min(rows, cols).
struct QrResult {
  DenseTensor q;
  DenseTensor r;
};
QrResult qr(const DenseTensor& t, std::size_t row_axes);

/// Thin LQ (t = l q with orthonormal rows in q) of the same matrix view.
struct LqResult {
  DenseTensor l;
  DenseTensor q;
};
LqResult lq(const DenseTensor& t, std::size_t row_axes);

/// Singular values and factors of a plain matrix, largest first.
struct MatrixSvd {
  RowMatrix u;
  Eigen::VectorXd s;
  RowMatrix v;  // rows are right singular vectors (V^dagger)
};
MatrixSvd matrix_svd(const RowMatrix& m);

}  // namespace topomagic

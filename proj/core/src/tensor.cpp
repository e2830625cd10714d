#include "topomagic/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "topomagic/errors.hpp"

namespace topomagic {

namespace {

std::string shape_string(const Shape& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

// Row-major strides.
std::vector<std::size_t> strides_of(const Shape& shape) {
  std::vector<std::size_t> st(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) st[i - 1] = st[i] * shape[i];
  return st;
}

void check_axes(std::span<const std::size_t> axes, std::size_t rank, const char* which) {
  std::vector<bool> seen(rank, false);
  for (std::size_t ax : axes) {
    if (ax >= rank) {
      throw DimensionError(std::string(which) + ": axis " + std::to_string(ax) +
                           " out of range for rank " + std::to_string(rank));
    }
    if (seen[ax]) {
      throw DimensionError(std::string(which) + ": duplicate axis " + std::to_string(ax));
    }
    seen[ax] = true;
  }
}

}  // namespace

std::size_t shape_product(std::span<const std::size_t> extents) {
  return std::accumulate(extents.begin(), extents.end(), std::size_t{1}, std::multiplies<>());
}

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)) {
  for (std::size_t e : shape_) {
    if (e == 0) throw DimensionError("tensor extents must be positive, got " + shape_string(shape_));
  }
  data_.assign(shape_product(shape_), cplx{0.0, 0.0});
}

DenseTensor::DenseTensor(Shape shape, std::vector<cplx> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  for (std::size_t e : shape_) {
    if (e == 0) throw DimensionError("tensor extents must be positive, got " + shape_string(shape_));
  }
  if (shape_product(shape_) != data_.size()) {
    throw DimensionError("shape " + shape_string(shape_) + " does not match " +
                         std::to_string(data_.size()) + " values");
  }
}

DenseTensor DenseTensor::random(Shape shape, std::mt19937_64& rng) {
  DenseTensor t(std::move(shape));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& v : t.data_) v = {gauss(rng), gauss(rng)};
  return t;
}

DenseTensor DenseTensor::from_matrix(const RowMatrix& m) {
  DenseTensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
  t.matrix(1) = m;
  return t;
}

std::size_t DenseTensor::flat_index(std::initializer_list<std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw DimensionError("index rank " + std::to_string(index.size()) + " for tensor of shape " +
                         shape_string(shape_));
  }
  std::size_t flat = 0;
  std::size_t axis = 0;
  for (std::size_t i : index) {
    if (i >= shape_[axis]) throw DimensionError("index out of range on axis " + std::to_string(axis));
    flat = flat * shape_[axis] + i;
    ++axis;
  }
  return flat;
}

cplx& DenseTensor::operator()(std::initializer_list<std::size_t> index) {
  return data_[flat_index(index)];
}

const cplx& DenseTensor::operator()(std::initializer_list<std::size_t> index) const {
  return data_[flat_index(index)];
}

DenseTensor DenseTensor::reshaped(Shape shape) const& {
  DenseTensor copy = *this;
  return std::move(copy).reshaped(std::move(shape));
}

DenseTensor DenseTensor::reshaped(Shape shape) && {
  if (shape_product(shape) != data_.size()) {
    throw DimensionError("cannot reshape " + shape_string(shape_) + " to " + shape_string(shape));
  }
  DenseTensor out;
  out.shape_ = std::move(shape);
  out.data_ = std::move(data_);
  return out;
}

DenseTensor DenseTensor::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != rank()) throw DimensionError("permutation rank mismatch");
  check_axes(perm, rank(), "permute");
  bool identity = true;
  for (std::size_t i = 0; i < perm.size(); ++i) identity = identity && perm[i] == i;
  if (identity) return *this;

  Shape out_shape(rank());
  for (std::size_t i = 0; i < rank(); ++i) out_shape[i] = shape_[perm[i]];
  DenseTensor out(out_shape);

  const auto in_strides = strides_of(shape_);
  // Stride in the source for each output axis.
  std::vector<std::size_t> src_stride(rank());
  for (std::size_t i = 0; i < rank(); ++i) src_stride[i] = in_strides[perm[i]];

  const std::size_t r = rank();
  const std::size_t inner = out_shape[r - 1];
  const std::size_t inner_stride = src_stride[r - 1];
  std::vector<std::size_t> counter(r, 0);
  std::size_t src = 0;
  const std::size_t outer_count = out.size() / inner;
  cplx* dst = out.data_.data();
  for (std::size_t o = 0; o < outer_count; ++o) {
    const cplx* s = data_.data() + src;
    for (std::size_t k = 0; k < inner; ++k) dst[k] = s[k * inner_stride];
    dst += inner;
    // Advance the outer multi-index (axes 0..r-2).
    for (std::size_t ax = r - 1; ax-- > 0;) {
      if (++counter[ax] < out_shape[ax]) {
        src += src_stride[ax];
        break;
      }
      src -= src_stride[ax] * (out_shape[ax] - 1);
      counter[ax] = 0;
    }
  }
  return out;
}

DenseTensor DenseTensor::conj() const {
  DenseTensor out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

DenseTensor& DenseTensor::operator*=(cplx factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

double DenseTensor::norm() const {
  double acc = 0.0;
  for (const auto& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

bool DenseTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Eigen::Map<RowMatrix> DenseTensor::matrix(std::size_t row_axes) {
  if (row_axes > rank()) throw DimensionError("matrix view: too many row axes");
  const auto rows = static_cast<Eigen::Index>(
      shape_product(std::span<const std::size_t>(shape_.data(), row_axes)));
  const auto cols = static_cast<Eigen::Index>(data_.size()) / std::max<Eigen::Index>(rows, 1);
  return {data_.data(), rows, cols};
}

Eigen::Map<const RowMatrix> DenseTensor::matrix(std::size_t row_axes) const {
  if (row_axes > rank()) throw DimensionError("matrix view: too many row axes");
  const auto rows = static_cast<Eigen::Index>(
      shape_product(std::span<const std::size_t>(shape_.data(), row_axes)));
  const auto cols = static_cast<Eigen::Index>(data_.size()) / std::max<Eigen::Index>(rows, 1);
  return {data_.data(), rows, cols};
}

DenseTensor contract(const DenseTensor& a, std::span<const std::size_t> axes_a,
                     const DenseTensor& b, std::span<const std::size_t> axes_b) {
  if (axes_a.size() != axes_b.size()) {
    throw DimensionError("contract: " + std::to_string(axes_a.size()) + " axes of a paired with " +
                         std::to_string(axes_b.size()) + " axes of b");
  }
  check_axes(axes_a, a.rank(), "contract(a)");
  check_axes(axes_b, b.rank(), "contract(b)");
  for (std::size_t i = 0; i < axes_a.size(); ++i) {
    if (a.extent(axes_a[i]) != b.extent(axes_b[i])) {
      throw DimensionError("contract: extent mismatch on axes (" + std::to_string(axes_a[i]) + "," +
                           std::to_string(axes_b[i]) + "): " + std::to_string(a.extent(axes_a[i])) +
                           " vs " + std::to_string(b.extent(axes_b[i])));
    }
  }

  std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
  for (auto ax : axes_a) used_a[ax] = true;
  for (auto ax : axes_b) used_b[ax] = true;

  std::vector<std::size_t> perm_a, perm_b;
  Shape out_shape;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!used_a[i]) {
      perm_a.push_back(i);
      out_shape.push_back(a.extent(i));
    }
  }
  const std::size_t free_a = perm_a.size();
  perm_a.insert(perm_a.end(), axes_a.begin(), axes_a.end());
  perm_b.assign(axes_b.begin(), axes_b.end());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!used_b[i]) {
      perm_b.push_back(i);
      out_shape.push_back(b.extent(i));
    }
  }

  const DenseTensor pa = a.permuted(perm_a);
  const DenseTensor pb = b.permuted(perm_b);
  const auto ma = pa.matrix(free_a);
  const auto mb = pb.matrix(axes_b.size());

  if (out_shape.empty()) out_shape.push_back(1);
  DenseTensor out(out_shape);
  Eigen::Map<RowMatrix>(out.data(), ma.rows(), mb.cols()).noalias() = ma * mb;
  return out;
}

std::size_t truncation_rank(std::span<const double> s, const TruncationPolicy& policy,
                            double* discarded) {
  double total = 0.0;
  for (double v : s) total += v * v;
  if (total <= 0.0 || s.empty()) {
    if (discarded) *discarded = 0.0;
    return s.empty() ? 0 : 1;
  }
  std::size_t keep = 0;
  while (keep < s.size() && s[keep] * s[keep] / total >= policy.cutoff && s[keep] > 0.0) ++keep;
  keep = std::min(keep, std::max<std::size_t>(policy.max_bond, 1));
  keep = std::max<std::size_t>(keep, 1);

  // Never split a degenerate multiplet at the cut.
  if (keep < s.size()) {
    const double floor = 1e-13 * s[0];
    auto degenerate = [&](std::size_t i) {  // s[i-1] and s[i] belong together
      return s[i] > floor && (s[i - 1] - s[i]) <= kDegeneracyTolerance * s[i - 1];
    };
    std::size_t start = keep;
    while (start > 0 && degenerate(start)) --start;
    if (start != keep) keep = start > 0 ? start : keep;
  }

  if (discarded) {
    double dropped = 0.0;
    for (std::size_t i = keep; i < s.size(); ++i) dropped += s[i] * s[i];
    *discarded = dropped / total;
  }
  return keep;
}

MatrixSvd matrix_svd(const RowMatrix& m) {
  using ColMatrix = Eigen::MatrixXcd;
  MatrixSvd out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  // Strongly rectangular inputs go through a QR/LQ step first.
  if (rows > 2 * cols && cols > 0) {
    Eigen::HouseholderQR<ColMatrix> hqr(m);
    ColMatrix r = hqr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<ColMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ColMatrix q = hqr.householderQ() * ColMatrix::Identity(rows, cols);
    out.u = q * svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV().adjoint();
  } else if (cols > 2 * rows && rows > 0) {
    ColMatrix mt = m.adjoint();
    Eigen::HouseholderQR<ColMatrix> hqr(mt);
    ColMatrix r = hqr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<ColMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ColMatrix q = hqr.householderQ() * ColMatrix::Identity(cols, rows);
    // m = r^dag q^dag = (U S V^dag)^dag q^dag = V S U^dag q^dag
    out.u = svd.matrixV();
    out.s = svd.singularValues();
    out.v = (q * svd.matrixU()).adjoint();
  } else {
    Eigen::BDCSVD<ColMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV().adjoint();
  }
  bool bad = !out.s.allFinite() || !out.u.allFinite() || !out.v.allFinite();
  if (!bad && m.size() > 0) {
    // BDCSVD occasionally breaks down on exactly degenerate spectra, either
    // with NaNs or with a silently wrong factorization.
    const double scale = std::max(out.s.size() ? out.s(0) : 0.0, 1e-300);
    const double res = (out.u * out.s.asDiagonal() * out.v - ColMatrix(m)).norm();
    bad = !(res <= 1e-10 * scale * std::sqrt(static_cast<double>(std::min(rows, cols))));
  }
  if (bad) {
    Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV().adjoint();
    if (!out.s.allFinite()) throw NumericError("SVD produced non-finite singular values");
  }
  return out;
}

SvdResult svd_truncate(const DenseTensor& t, std::span<const std::size_t> row_axes,
                       const TruncationPolicy& policy) {
  check_axes(row_axes, t.rank(), "svd_truncate");
  if (!t.all_finite()) throw NumericError("svd_truncate: non-finite input");

  std::vector<bool> is_row(t.rank(), false);
  for (auto ax : row_axes) is_row[ax] = true;
  std::vector<std::size_t> perm(row_axes.begin(), row_axes.end());
  Shape row_shape, col_shape;
  for (auto ax : row_axes) row_shape.push_back(t.extent(ax));
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (!is_row[i]) {
      perm.push_back(i);
      col_shape.push_back(t.extent(i));
    }
  }
  const DenseTensor p = t.permuted(perm);
  const auto m = p.matrix(row_axes.size());
  MatrixSvd f = matrix_svd(m);

  std::vector<double> sv(f.s.data(), f.s.data() + f.s.size());
  SvdResult out;
  const std::size_t k = truncation_rank(sv, policy, &out.discarded_weight);
  sv.resize(k);
  if (policy.renormalize) {
    double nrm = 0.0;
    for (double v : sv) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm > 0.0) {
      for (double& v : sv) v /= nrm;
    }
  }
  out.s = std::move(sv);

  Shape u_shape = row_shape;
  u_shape.push_back(k);
  Shape v_shape{k};
  v_shape.insert(v_shape.end(), col_shape.begin(), col_shape.end());
  out.u = DenseTensor(u_shape);
  out.v = DenseTensor(v_shape);
  out.u.matrix(row_shape.size()) = f.u.leftCols(static_cast<Eigen::Index>(k));
  out.v.matrix(1) = f.v.topRows(static_cast<Eigen::Index>(k));
  return out;
}

QrResult qr(const DenseTensor& t, std::size_t row_axes) {
  if (row_axes == 0 || row_axes >= t.rank()) throw DimensionError("qr: invalid row split");
  const auto m = t.matrix(row_axes);
  const Eigen::Index rows = m.rows(), cols = m.cols();
  const Eigen::Index k = std::min(rows, cols);
  Eigen::HouseholderQR<Eigen::MatrixXcd> hqr(m);
  Eigen::MatrixXcd q = hqr.householderQ() * Eigen::MatrixXcd::Identity(rows, k);
  Eigen::MatrixXcd r = hqr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  Shape q_shape(t.shape().begin(), t.shape().begin() + static_cast<std::ptrdiff_t>(row_axes));
  q_shape.push_back(static_cast<std::size_t>(k));
  Shape r_shape{static_cast<std::size_t>(k)};
  r_shape.insert(r_shape.end(), t.shape().begin() + static_cast<std::ptrdiff_t>(row_axes),
                 t.shape().end());
  QrResult out{DenseTensor(q_shape), DenseTensor(r_shape)};
  out.q.matrix(row_axes) = q;
  out.r.matrix(1) = r;
  return out;
}

LqResult lq(const DenseTensor& t, std::size_t row_axes) {
  if (row_axes == 0 || row_axes >= t.rank()) throw DimensionError("lq: invalid row split");
  const auto m = t.matrix(row_axes);
  const Eigen::Index rows = m.rows(), cols = m.cols();
  const Eigen::Index k = std::min(rows, cols);
  Eigen::MatrixXcd mt = m.adjoint();
  Eigen::HouseholderQR<Eigen::MatrixXcd> hqr(mt);
  Eigen::MatrixXcd q = hqr.householderQ() * Eigen::MatrixXcd::Identity(cols, k);
  Eigen::MatrixXcd r = hqr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  Shape l_shape(t.shape().begin(), t.shape().begin() + static_cast<std::ptrdiff_t>(row_axes));
  l_shape.push_back(static_cast<std::size_t>(k));
  Shape q_shape{static_cast<std::size_t>(k)};
  q_shape.insert(q_shape.end(), t.shape().begin() + static_cast<std::ptrdiff_t>(row_axes),
                 t.shape().end());
  LqResult out{DenseTensor(l_shape), DenseTensor(q_shape)};
  out.l.matrix(row_axes) = r.adjoint();
  out.q.matrix(1) = q.adjoint();
  return out;
}

}  // namespace topomagic

#include "topomagic/mpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topomagic/errors.hpp"

namespace topomagic {

Mpo::Mpo(std::size_t local_dim, std::vector<DenseTensor> tensors)
    : local_dim_(local_dim), tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw DimensionError("MPO needs at least one site");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& w = tensors_[i];
    if (w.rank() != 4 || w.extent(1) != local_dim_ || w.extent(2) != local_dim_) {
      throw DimensionError("MPO site " + std::to_string(i) + " has the wrong shape");
    }
    if (i > 0 && tensors_[i - 1].extent(3) != w.extent(0)) {
      throw DimensionError("MPO bond mismatch at site " + std::to_string(i));
    }
  }
  if (tensors_.front().extent(0) != 1 || tensors_.back().extent(3) != 1) {
    throw DimensionError("MPO boundary bonds must have extent 1");
  }
}

std::size_t Mpo::bond_dim(std::size_t cut) const {
  if (cut == 0 || cut == length()) return 1;
  return tensors_.at(cut - 1).extent(3);
}

std::size_t Mpo::max_bond_dim() const {
  std::size_t m = 1;
  for (const auto& w : tensors_) m = std::max(m, w.extent(3));
  return m;
}

namespace {

void add_block(DenseTensor& w, std::size_t l, std::size_t r, const RowMatrix& op, cplx c) {
  const std::size_t d = w.extent(1);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t t = 0; t < d; ++t) {
      w({l, s, t, r}) += c * op(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
    }
  }
}

}  // namespace

Mpo build_sum_mpo(std::size_t length, std::size_t local_dim, const std::vector<TermPattern>& patterns) {
  if (length == 0) throw DimensionError("MPO length must be positive");
  const RowMatrix id = RowMatrix::Identity(static_cast<Eigen::Index>(local_dim), static_cast<Eigen::Index>(local_dim));
  // Channel layout: 0 = nothing placed yet, then private channels, last = finished.
  std::vector<std::size_t> first_channel;
  std::size_t bond = 1;
  for (const auto& p : patterns) {
    if (p.ops.empty()) throw DimensionError("empty term pattern");
    for (const auto& o : p.ops) {
      if (o.rows() != static_cast<Eigen::Index>(local_dim) || o.cols() != o.rows()) {
        throw DimensionError("term operator does not match the local dimension");
      }
    }
    first_channel.push_back(bond);
    bond += p.ops.size() - 1;
  }
  const std::size_t done = bond++;

  std::vector<DenseTensor> ws;
  for (std::size_t i = 0; i < length; ++i) {
    DenseTensor w({bond, local_dim, local_dim, bond});
    add_block(w, 0, 0, id, 1.0);
    add_block(w, done, done, id, 1.0);
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const auto& p = patterns[k];
      const std::size_t n = p.ops.size();
      // Start here.
      if (i + n <= length) {
        const cplx c = p.coefficient(i);
        if (c != cplx(0.0)) add_block(w, 0, n == 1 ? done : first_channel[k], p.ops[0], c);
      }
      // Continue or finish.
      for (std::size_t j = 1; j < n; ++j) {
        if (i < j) continue;
        const std::size_t from = first_channel[k] + j - 1;
        const std::size_t to = j + 1 == n ? done : from + 1;
        add_block(w, from, to, p.ops[j], 1.0);
      }
    }
    ws.push_back(std::move(w));
  }
  // Boundaries: left row selects channel 0, right column selects `done`.
  auto slice = [&](const DenseTensor& w, bool left) {
    const std::size_t dl = left ? 1 : w.extent(0), dr = left ? w.extent(3) : 1;
    DenseTensor out({dl, local_dim, local_dim, dr});
    for (std::size_t a = 0; a < dl; ++a)
      for (std::size_t s = 0; s < local_dim; ++s)
        for (std::size_t t = 0; t < local_dim; ++t)
          for (std::size_t b = 0; b < dr; ++b) out({a, s, t, b}) = w({left ? 0 : a, s, t, left ? b : done});
    return out;
  };
  if (length == 1) {
    DenseTensor w({1, local_dim, local_dim, 1});
    for (std::size_t s = 0; s < local_dim; ++s)
      for (std::size_t t = 0; t < local_dim; ++t) w({0, s, t, 0}) = ws[0]({0, s, t, done});
    return Mpo(local_dim, {std::move(w)});
  }
  ws.front() = slice(ws.front(), true);
  ws.back() = slice(ws.back(), false);
  return Mpo(local_dim, std::move(ws));
}

Mpo product_mpo(const std::vector<RowMatrix>& ops) {
  if (ops.empty()) throw DimensionError("product MPO needs at least one site");
  const auto d = static_cast<std::size_t>(ops.front().rows());
  std::vector<DenseTensor> ws;
  for (const auto& o : ops) {
    if (static_cast<std::size_t>(o.rows()) != d || o.cols() != o.rows()) throw DimensionError("product MPO operator shape");
    ws.push_back(DenseTensor::from_matrix(o).reshaped({1, d, d, 1}));
  }
  return Mpo(d, std::move(ws));
}

Mpo add(const Mpo& a, const Mpo& b, cplx wa, cplx wb) {
  if (a.length() != b.length() || a.local_dim() != b.local_dim()) throw DimensionError("MPO sum: shapes differ");
  const std::size_t n = a.length(), d = a.local_dim();
  std::vector<DenseTensor> ws;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.site(i);
    const auto& y = b.site(i);
    const bool first = i == 0, last = i + 1 == n;
    const std::size_t dl = first ? 1 : x.extent(0) + y.extent(0);
    const std::size_t dr = last ? 1 : x.extent(3) + y.extent(3);
    DenseTensor w({dl, d, d, dr});
    const std::size_t ol = first ? 0 : x.extent(0), orr = last ? 0 : x.extent(3);
    const cplx ca = first ? wa : 1.0, cb = first ? wb : 1.0;
    if (n == 1) {
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = 0; t < d; ++t) w({0, s, t, 0}) = wa * x({0, s, t, 0}) + wb * y({0, s, t, 0});
      ws.push_back(std::move(w));
      continue;
    }
    for (std::size_t l = 0; l < x.extent(0); ++l)
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = 0; t < d; ++t)
          for (std::size_t r = 0; r < x.extent(3); ++r) w({l, s, t, r}) += ca * x({l, s, t, r});
    for (std::size_t l = 0; l < y.extent(0); ++l)
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = 0; t < d; ++t)
          for (std::size_t r = 0; r < y.extent(3); ++r) w({ol + l, s, t, orr + r}) += cb * y({l, s, t, r});
    ws.push_back(std::move(w));
  }
  return Mpo(d, std::move(ws));
}

RowMatrix to_dense(const Mpo& h) {
  const std::size_t d = h.local_dim();
  const double dim = std::pow(static_cast<double>(d), static_cast<double>(h.length()));
  if (dim > 16384) throw CapacityError("to_dense: operator dimension above 16384");
  // acc: (D, rows*cols) stored as tensor (rows, cols, D)
  DenseTensor acc({1, 1, 1});
  acc({0, 0, 0}) = 1.0;
  for (const auto& w : h.sites()) {
    DenseTensor t = contract(acc, {2}, w, {0});  // (R, C, s, t, Dr)
    const std::size_t r = t.extent(0), c = t.extent(1), dr = t.extent(4);
    acc = t.permuted({0, 2, 1, 3, 4}).reshaped({r * d, c * d, dr});
  }
  const std::size_t n = acc.extent(0);
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc({i, j, 0});
  return m;
}

namespace {

// env (a, w, b): bra bond, MPO bond, ket bond.
DenseTensor mpo_transfer(const DenseTensor& env, const DenseTensor& a, const DenseTensor& w) {
  DenseTensor t = contract(env, {2}, a, {0});           // (a', w, s, b)
  t = contract(t, {1, 2}, w, {0, 2});                   // (a', b, s', wr)
  return contract(a.conj(), {0, 1}, t, {0, 2});         // (ar, b, wr)
}

}  // namespace

double expectation(const Mps& psi, const Mpo& h) {
  if (psi.length() != h.length() || psi.local_dim() != h.local_dim()) throw DimensionError("MPO/MPS mismatch");
  DenseTensor env({1, 1, 1});
  env({0, 0, 0}) = 1.0;
  for (std::size_t i = 0; i < psi.length(); ++i) {
    env = mpo_transfer(env, psi.site(i), h.site(i)).permuted({0, 2, 1});
  }
  const cplx num = env({0, 0, 0});
  const cplx den = overlap(psi, psi) * std::exp(-2.0 * psi.norm_log());
  return (num / den).real();
}

double expectation_squared(const Mps& psi, const Mpo& h) {
  if (psi.length() != h.length() || psi.local_dim() != h.local_dim()) throw DimensionError("MPO/MPS mismatch");
  // env (a, w1, w2, b)
  DenseTensor env({1, 1, 1, 1});
  env({0, 0, 0, 0}) = 1.0;
  for (std::size_t i = 0; i < psi.length(); ++i) {
    const auto& a = psi.site(i);
    const auto& w = h.site(i);
    DenseTensor t = contract(env, {3}, a, {0});         // (a', w1, w2, s, b)
    t = contract(t, {2, 3}, w, {0, 2});                 // (a', w1, b, s', w2r)
    t = contract(t, {1, 3}, w, {0, 2});                 // (a', b, w2r, s'', w1r)
    t = contract(a.conj(), {0, 1}, t, {0, 3});          // (ar, b, w2r, w1r)
    env = t.permuted({0, 3, 2, 1});
  }
  const cplx num = env({0, 0, 0, 0});
  const cplx den = overlap(psi, psi) * std::exp(-2.0 * psi.norm_log());
  return (num / den).real();
}

bool is_hermitian(const Mpo& h, double tol) {
  const RowMatrix m = to_dense(h);
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

}  // namespace topomagic

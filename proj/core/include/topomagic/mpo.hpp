#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "topomagic/mps.hpp"
#include "topomagic/tensor.hpp"

namespace topomagic {

/// Open-boundary matrix product operator. Site tensors have shape
/// (D_left, d_out, d_in, D_right) with unit boundary bonds.
class Mpo {
 public:
  Mpo() = default;
  Mpo(std::size_t local_dim, std::vector<DenseTensor> tensors);

  std::size_t length() const noexcept { return tensors_.size(); }
  std::size_t local_dim() const noexcept { return local_dim_; }
  const DenseTensor& site(std::size_t i) const { return tensors_.at(i); }
  const std::vector<DenseTensor>& sites() const noexcept { return tensors_; }
  std::size_t bond_dim(std::size_t cut) const;
  std::size_t max_bond_dim() const;

 private:
  std::size_t local_dim_ = 2;
  std::vector<DenseTensor> tensors_;
};

/// A translation-invariant operator pattern O_0 (x) O_1 (x) ... acting on
/// consecutive sites, with a coefficient that depends on the first site.
/// Placements that would run off the chain are skipped.
struct TermPattern {
  std::vector<RowMatrix> ops;
  std::function<cplx(std::size_t)> coefficient;
};

/// Sum over patterns and start sites, encoded as a finite-state automaton:
/// every pattern with k operators adds k-1 private channels to the bond.
Mpo build_sum_mpo(std::size_t length, std::size_t local_dim, const std::vector<TermPattern>& patterns);

/// A single product operator prod_i O_i (bond dimension 1).
Mpo product_mpo(const std::vector<RowMatrix>& ops);

/// a*A + b*B via direct sum of the bonds.
Mpo add(const Mpo& a, const Mpo& b, cplx wa = 1.0, cplx wb = 1.0);

/// Dense d^L x d^L matrix; basis index has site 0 as the most significant digit.
RowMatrix to_dense(const Mpo& h);

/// <psi|H|psi> / <psi|psi>.
double expectation(const Mps& psi, const Mpo& h);
/// <psi|H^2|psi> / <psi|psi>.
double expectation_squared(const Mps& psi, const Mpo& h);

/// Checks Hermiticity through the dense matrix (small chains only).
bool is_hermitian(const Mpo& h, double tol = 1e-12);

}  // namespace topomagic

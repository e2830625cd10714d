#pragma once

#include <functional>
#include <vector>

#include "topomagic/tensor.hpp"

namespace topomagic {

using LinearMap = std::function<void(const ComplexVector& in, ComplexVector& out)>;

struct LanczosOptions {
  int krylov_dim = 60;     // vectors per cycle
  int max_restarts = 20;
  double tolerance = 1e-12;  // residual norm of the Ritz pair
};

struct LanczosResult {
  double value = 0.0;
  ComplexVector vector;
  double residual = 0.0;
  int matvecs = 0;
  bool converged = false;
};

/// Lowest eigenpair of a Hermitian map, thick-restarted with the current Ritz
/// vector, full reorthogonalization. Vectors in `deflate` (orthonormal) are
/// projected out of the Krylov space.
LanczosResult lanczos_lowest(const LinearMap& apply, ComplexVector start, const LanczosOptions& opt,
                             const std::vector<ComplexVector>& deflate = {});

}  // namespace topomagic

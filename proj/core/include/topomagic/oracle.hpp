#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "topomagic/hamiltonians.hpp"
#include "topomagic/mps.hpp"

// Brute-force references for small chains. Nothing here touches the MPO or
// Pauli-MPS code paths.
namespace topomagic::oracle {

inline constexpr std::size_t kMaxStatevector = std::size_t{1} << 14;

/// Dense, normalized vector; site 0 is the most significant digit.
ComplexVector statevector(const Mps& psi);

/// Applies `op` to `site` of a d^L vector.
ComplexVector apply_local(const ComplexVector& v, std::size_t length, std::size_t d, std::size_t site,
                          const RowMatrix& op);

/// <v|P_alpha|v> for every string alpha (index digits in base d^2, site 0
/// most significant), via per-site basis changes of conj(v) (x) v.
std::vector<cplx> pauli_expectations(const ComplexVector& v, std::size_t length, std::size_t d);

/// SRE (pure or mixed) by enumeration; region = all sites when empty.
/// Capacity: L <= 10 for qubits, L <= 7 for qutrits.
double exact_sre(const ComplexVector& v, std::size_t length, std::size_t d, int n,
                 const std::optional<SiteSet>& region = std::nullopt);

RowMatrix reduced_density_matrix(const ComplexVector& v, std::size_t length, std::size_t d, const SiteSet& region);
double entropy(const ComplexVector& v, std::size_t length, std::size_t d, const SiteSet& region);

/// A product of single-site operators with a coefficient.
struct Term {
  cplx coeff = 1.0;
  std::vector<std::pair<std::size_t, RowMatrix>> ops;
};

/// Term list of a model, written out independently of the MPO builder.
/// `periodic` adds the wrap-around terms (used for the TCI parent check).
std::vector<Term> model_terms(const ModelSpec& spec, bool periodic = false);

/// Sum of Kronecker products; dimension <= 4096.
RowMatrix dense_hamiltonian(const std::vector<Term>& terms, std::size_t length, std::size_t d);
/// y = H x without forming H.
void apply_hamiltonian(const std::vector<Term>& terms, std::size_t length, std::size_t d, const ComplexVector& x,
                       ComplexVector& y);

struct GroundState {
  double energy = 0.0;
  ComplexVector vector;
  std::size_t degeneracy = 1;  // levels within `degeneracy_tol` of the lowest
};

GroundState exact_ground_state(const RowMatrix& h, double degeneracy_tol = 1e-8);
/// Dense for d^L <= 4096, Lanczos with deflation above.
GroundState exact_ground_state(const std::vector<Term>& terms, std::size_t length, std::size_t d,
                               double degeneracy_tol = 1e-8);

}  // namespace topomagic::oracle

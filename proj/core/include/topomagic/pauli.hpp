#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "topomagic/tensor.hpp"

namespace topomagic {

/// Local operator basis on a site of dimension d, indexed by alpha in [0, d*d).
///
/// Qubits: 0 = I, 1 = X, 2 = Y, 3 = Z.
/// Qutrits: alpha = 3a + b labels the Weyl operator X^a Z^b with
/// X|s> = |s+1 mod 3>, Z|s> = w^s |s>, w = exp(2 pi i / 3).
RowMatrix local_pauli(std::size_t d, std::size_t alpha);

/// Number of basis operators on one site (d^2).
inline std::size_t pauli_basis_size(std::size_t d) { return d * d; }

/// Pauli (or Weyl) string: site -> basis label; unlisted sites carry identity.
/// Sites are 0-based.
struct PauliString {
  std::map<std::size_t, std::size_t> ops;

  /// Parses whitespace-separated `label:site` tokens. Labels are I/X/Y/Z for
  /// qubits and two digits `ab` (X^a Z^b) for qutrits, e.g. "Z:0 X:1 Z:2" or
  /// "10:3 02:4".
  static PauliString parse(std::string_view text, std::size_t d);
  std::string to_string(std::size_t d) const;

  /// Throws DimensionError when a site or label does not fit (length, d).
  void validate(std::size_t length, std::size_t d) const;
};

}  // namespace topomagic

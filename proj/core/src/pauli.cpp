#include "topomagic/pauli.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "topomagic/errors.hpp"

namespace topomagic {

RowMatrix local_pauli(std::size_t d, std::size_t alpha) {
  if (d == 2) {
    RowMatrix m = RowMatrix::Zero(2, 2);
    switch (alpha) {
      case 0: m << 1, 0, 0, 1; break;
      case 1: m << 0, 1, 1, 0; break;
      case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
      case 3: m << 1, 0, 0, -1; break;
      default: throw DimensionError("qubit Pauli label out of range: " + std::to_string(alpha));
    }
    return m;
  }
  if (d == 3) {
    if (alpha >= 9) throw DimensionError("qutrit Weyl label out of range: " + std::to_string(alpha));
    const std::size_t a = alpha / 3, b = alpha % 3;
    const cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    RowMatrix m = RowMatrix::Zero(3, 3);
    // <s| X^a Z^b |s'> = w^{b s'} delta(s, s' + a)
    for (std::size_t sp = 0; sp < 3; ++sp) {
      m((sp + a) % 3, sp) = std::pow(omega, static_cast<double>(b * sp));
    }
    return m;
  }
  throw DimensionError("unsupported local dimension " + std::to_string(d));
}

PauliString PauliString::parse(std::string_view text, std::size_t d) {
  PauliString p;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
      throw DimensionError("bad Pauli token '" + tok + "', expected label:site");
    }
    const std::string label = tok.substr(0, colon);
    const std::size_t site = std::stoul(tok.substr(colon + 1));
    std::size_t alpha = 0;
    if (d == 2) {
      if (label == "I") alpha = 0;
      else if (label == "X") alpha = 1;
      else if (label == "Y") alpha = 2;
      else if (label == "Z") alpha = 3;
      else throw DimensionError("bad qubit label '" + label + "'");
    } else if (d == 3) {
      if (label.size() != 2 || label[0] < '0' || label[0] > '2' || label[1] < '0' || label[1] > '2') {
        throw DimensionError("bad qutrit label '" + label + "', expected two digits in 0..2");
      }
      alpha = static_cast<std::size_t>(label[0] - '0') * 3 + static_cast<std::size_t>(label[1] - '0');
    } else {
      throw DimensionError("unsupported local dimension " + std::to_string(d));
    }
    if (p.ops.count(site)) throw DimensionError("site " + std::to_string(site) + " listed twice");
    if (alpha != 0) p.ops[site] = alpha;
  }
  return p;
}

std::string PauliString::to_string(std::size_t d) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [site, alpha] : ops) {
    if (!first) os << ' ';
    first = false;
    if (d == 2) os << "IXYZ"[alpha];
    else os << alpha / 3 << alpha % 3;
    os << ':' << site;
  }
  return os.str();
}

void PauliString::validate(std::size_t length, std::size_t d) const {
  for (const auto& [site, alpha] : ops) {
    if (site >= length) {
      throw DimensionError("Pauli string site " + std::to_string(site) + " outside chain of length " +
                           std::to_string(length));
    }
    if (alpha >= d * d) {
      throw DimensionError("Pauli label " + std::to_string(alpha) + " invalid for d=" + std::to_string(d));
    }
  }
}

}  // namespace topomagic

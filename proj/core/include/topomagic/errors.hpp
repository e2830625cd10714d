#pragma once

#include <stdexcept>
#include <string>

namespace topomagic {

// Extents or axes that do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// NaN/Inf in an input, or a factorization that failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state with (numerically) zero norm.
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dense fallback that would exceed its configured size limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid run configuration. key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace topomagic

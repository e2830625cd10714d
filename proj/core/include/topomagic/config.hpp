#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "topomagic/ground_state.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/partition.hpp"
#include "topomagic/tensor.hpp"

namespace topomagic {

/// Which sites receive a T gate.
struct DopingSpec {
  enum class Pattern { all, first, list };
  Pattern pattern = Pattern::all;
  std::size_t count = 0;           // N_T for `first`; ignored otherwise
  std::vector<std::size_t> sites;  // for `list`
  bool enabled = false;

  /// Resolved site list for a chain of `length` sites.
  std::vector<std::size_t> resolve(std::size_t length) const;
};

/// How the state at each point is produced.
///   auto:  exact constructors where the ground space is degenerate or the
///          model has an exact MPS (cluster h=0, tfim h=0, tci), DMRG otherwise
///   dmrg:  always DMRG
enum class StateSource { automatic, dmrg };

struct ScanSpec {
  std::string parameter;      // "h", "g", "delta", "J" or empty (single point)
  std::vector<double> grid;
};

struct DisorderCampaign {
  std::vector<double> strengths;  // Delta grid; empty = no campaign
  std::size_t samples = 100;      // N_s
  std::uint64_t base_seed = 1;
};

struct RunConfig {
  ModelSpec model;
  SolverConfig solver;             // solver.tilt is overridden by effective_tilt()
  std::optional<double> tilt;      // unset: 0.1 for aklt, 1e-3 otherwise
  StateSource source = StateSource::automatic;
  DopingSpec doping;
  std::vector<Geometry> geometries{Geometry::quad};
  std::vector<std::size_t> tri_sizes;   // custom windows; empty = equal thirds
  std::vector<std::size_t> quad_sizes;  // a, b, d, c; empty = equal quarters
  int replica = 2;
  TruncationPolicy pauli_policy{64, 1e-12, true};
  bool tee = true;
  bool edge = false;
  ScanSpec scan;
  DisorderCampaign disorder;
  std::filesystem::path output = "topomagic.csv";
  std::filesystem::path checkpoint_dir;  // empty = no MPS checkpoints
  std::size_t threads = 1;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  PartitionSpec partition(Geometry g) const;
  double effective_tilt() const;
};

/// `key = value` lines; '#' starts a comment; blank lines are ignored.
/// Lists are comma separated; a grid may also be written start:stop:step.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key = value` assignment (used for command-line overrides).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& cfg);

/// Expands start:stop:step (inclusive, tolerant to rounding) or a comma list.
std::vector<double> parse_grid(const std::string& key, const std::string& text);

}  // namespace topomagic

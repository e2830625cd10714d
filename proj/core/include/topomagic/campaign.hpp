#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "topomagic/config.hpp"
#include "topomagic/entanglement.hpp"
#include "topomagic/pauli_mps.hpp"

namespace topomagic {

inline constexpr int kCsvSchemaVersion = 1;

/// One (scan point x disorder realization) unit of work.
struct TaskPoint {
  std::size_t index = 0;
  double parameter = 0.0;       // value of config.scan.parameter (or the base value)
  double disorder = 0.0;        // Delta; 0 outside campaigns
  std::size_t realization = 0;
  std::uint64_t seed = 0;       // coupling-vector seed
};

std::vector<TaskPoint> expand_tasks(const RunConfig& cfg);
/// The model of one task, with scan parameter and disorder applied.
ModelSpec model_for(const RunConfig& cfg, const TaskPoint& task);

struct PointResult {
  TaskPoint task;
  ModelSpec model;
  std::string source;           // dmrg | cluster | ghz | tci_exact | checkpoint
  std::size_t doped = 0;        // N_T actually applied
  double energy = 0.0;
  double variance = 0.0;
  bool converged = true;
  int sweeps = 0;
  std::size_t chi = 0;
  double state_discarded = 0.0;
  std::vector<SreReport> sre;   // one per configured geometry
  std::vector<TeeReport> tee;   // empty unless cfg.tee
  std::optional<double> edge;
  std::vector<std::string> warnings;
  std::string error;            // non-empty when the point failed

  std::string status() const;   // ok | not_converged | error
};

/// Builds (or loads) the state, dopes it and evaluates every report.
/// Numerical failures are recorded in `error`, never thrown.
PointResult evaluate_point(const RunConfig& cfg, const TaskPoint& task);

/// Column names, then one row per result. Fields never contain commas.
std::vector<std::string> csv_columns(const RunConfig& cfg);
std::string csv_row(const RunConfig& cfg, const PointResult& r);
/// "# topomagic-csv <version>" and the config, one "# " line per key.
std::string csv_preamble(const RunConfig& cfg);

struct RunSummary {
  std::size_t total = 0;
  std::size_t computed = 0;
  std::size_t skipped = 0;      // already present in the output (resume)
  std::size_t failed = 0;
  std::filesystem::path summary_path;  // disorder campaigns only
};

/// Runs every task on cfg.threads workers. Rows are appended in task order
/// and flushed one by one; an existing output with the same preamble is
/// resumed by skipping the tasks it already holds.
RunSummary run_campaign(const RunConfig& cfg, std::ostream* log = nullptr);

/// Mean and standard error over realizations, per (parameter, Delta).
struct DisorderStat {
  double parameter = 0.0;
  double disorder = 0.0;
  std::string column;
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
};
std::vector<DisorderStat> summarize_disorder(const std::filesystem::path& csv);
void write_disorder_summary(const std::vector<DisorderStat>& stats, const std::filesystem::path& path);

/// Plain CSV reader for files written by run_campaign: header row + rows,
/// '#' lines skipped.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> preamble;
  std::ptrdiff_t column(const std::string& name) const;  // -1 if absent
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace topomagic

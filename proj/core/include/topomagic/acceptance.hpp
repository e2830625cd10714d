#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace topomagic {

enum class AcceptanceLevel { quick, full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;      // worst deviation, failing case, ...
  double seconds = 0.0;
  double budget = 0.0;     // seconds
};

struct AcceptanceOptions {
  AcceptanceLevel level = AcceptanceLevel::full;
  std::filesystem::path golden;  // golden_tables.csv; empty = skip golden comparisons
  std::vector<int> only;         // restrict to these criteria (empty = level default)
  std::ostream* log = nullptr;   // per-check chatter
};

/// quick: criterion 1 only. full: criteria 1-9.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// "[PASS] 1 fixed-point tables (detail) 1.2s / 120s"
std::string format_result(const CriterionResult& r);

/// criterion,key,value rows; '#' comments.
struct GoldenTable {
  std::map<std::string, double> values;  // "<criterion>|<key>" -> value
  double get(int criterion, const std::string& key) const;  // throws if missing
  bool has(int criterion, const std::string& key) const;
};
GoldenTable load_golden(const std::filesystem::path& path);

/// The values frozen in golden_tables.csv, freshly computed: table entries
/// through the constructed states and the TCI closed form on a g grid.
std::string golden_csv();

}  // namespace topomagic

// topomagic: run / verify / oracle / tables
#include <cmath>
#include <complex>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "topomagic/acceptance.hpp"
#include "topomagic/analytic.hpp"
#include "topomagic/campaign.hpp"
#include "topomagic/config.hpp"
#include "topomagic/errors.hpp"
#include "topomagic/oracle.hpp"

#ifndef TOPOMAGIC_GOLDEN_PATH
#define TOPOMAGIC_GOLDEN_PATH ""
#endif

namespace fs = std::filesystem;
using namespace topomagic;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out_dir;
  std::size_t threads = 0;
  std::int64_t seed = -1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config, "run configuration (key = value lines)")->check(CLI::ExistingFile);
  app->add_option("--set", c.sets, "override, key=value (repeatable)");
  app->add_option("-o,--out-dir", c.out_dir, "directory for the CSV and checkpoints");
  app->add_option("-j,--threads", c.threads, "worker threads");
  app->add_option("--seed", c.seed, "override solver, disorder and model seeds");
}

RunConfig make_config(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, "expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    set_config_value(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (c.threads) cfg.threads = c.threads;
  if (c.seed >= 0) {
    const auto s = static_cast<std::uint64_t>(c.seed);
    cfg.solver.seed = s;
    cfg.model.seed = s;
    cfg.disorder.base_seed = s;
  }
  if (!c.out_dir.empty()) {
    fs::create_directories(c.out_dir);
    cfg.output = fs::path(c.out_dir) / cfg.output.filename();
    if (!cfg.checkpoint_dir.empty()) cfg.checkpoint_dir = fs::path(c.out_dir) / cfg.checkpoint_dir.filename();
  }
  cfg.validate();
  return cfg;
}

int cmd_run(const Common& c, bool dry) {
  const RunConfig cfg = make_config(c);
  if (dry) {
    std::cout << to_text(cfg);
    return 0;
  }
  const RunSummary s = run_campaign(cfg, &std::cerr);
  std::cerr << "wrote " << cfg.output.string() << ": " << s.computed << " computed, " << s.skipped << " resumed, "
            << s.failed << " failed of " << s.total << "\n";
  if (!s.summary_path.empty()) std::cerr << "disorder summary: " << s.summary_path.string() << "\n";
  return s.failed ? 2 : 0;
}

int cmd_verify(bool quick, const std::vector<int>& only, const std::string& golden, bool verbose) {
  AcceptanceOptions opt;
  opt.level = quick ? AcceptanceLevel::quick : AcceptanceLevel::full;
  opt.only = only;
  opt.golden = golden;
  opt.log = verbose ? &std::cerr : nullptr;
  const auto results = run_acceptance(opt);
  std::vector<int> failed;
  for (const auto& r : results) {
    std::cout << format_result(r) << std::endl;
    if (!r.passed) failed.push_back(r.id);
  }
  if (failed.empty()) return 0;
  std::cout << "failing criteria:";
  for (int id : failed) std::cout << " " << id;
  std::cout << std::endl;
  return 1;
}

// Everything by dense enumeration: exact ground state, doping, SRE and
// entropies per region.
int cmd_oracle(const Common& c) {
  const RunConfig cfg = make_config(c);
  ModelSpec m = model_for(cfg, TaskPoint{});
  m.validate();
  const std::size_t n = m.length, d = m.local_dim();
  if ((d == 2 && n > 10) || (d == 3 && n > 7)) throw ContractViolation("oracle: chain too long for enumeration");

  const auto gs = oracle::exact_ground_state(oracle::model_terms(m), n, d);
  ComplexVector v = gs.vector;
  RowMatrix t = RowMatrix::Identity(2, 2);
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  const auto sites = cfg.doping.resolve(n);
  for (std::size_t s : sites) v = oracle::apply_local(v, n, d, s, t);

  nlohmann::json out;
  out["model"] = to_string(m.kind);
  out["L"] = n;
  out["energy"] = gs.energy;
  out["degeneracy"] = gs.degeneracy;
  out["N_T"] = sites.size();
  out["sre_full"] = oracle::exact_sre(v, n, d, cfg.replica);
  for (Geometry g : cfg.geometries) {
    const auto part = cfg.partition(g);
    const auto regions = part.regions();
    nlohmann::json gj;
    std::array<double, 4> mv{}, sv{};
    for (std::size_t k = 0; k < 4; ++k) {
      mv[k] = oracle::exact_sre(v, n, d, cfg.replica, regions[k]);
      sv[k] = oracle::entropy(v, n, d, regions[k]);
      gj["M_" + std::string(kRegionNames[k])] = mv[k];
      gj["S_" + std::string(kRegionNames[k])] = sv[k];
    }
    gj["M_topo"] = -(mv[0] + mv[1] - mv[2] - mv[3]);
    gj["S_topo"] = sv[0] + sv[1] - sv[2] - sv[3];
    out[to_string(g)] = gj;
  }
  if (gs.degeneracy > 1) out["warning"] = "degenerate ground space; the vector is one arbitrary member";
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_tables(bool golden) {
  if (golden) {
    std::cout << golden_csv();
    return 0;
  }
  const double kt = std::log2(4.0 / 3.0);
  auto fmt = [&](double v) {
    std::ostringstream s;
    if (std::abs(v) < 1e-14) s << "0";
    else if (std::abs(v - kt) < 1e-12) s << "log2(4/3)";
    else if (std::abs(v - 2 * kt) < 1e-12) s << "2log2(4/3)";
    else if (std::abs(v - 1) < 1e-12) s << "1";
    else if (std::abs(v - 2) < 1e-12) s << "2";
    else s << v;
    return s.str();
  };
  for (Geometry g : {Geometry::quad, Geometry::tri}) {
    std::cout << to_string(g) << "\n";
    std::cout << std::left << std::setw(16) << "quantity" << std::setw(12) << "state" << std::setw(14) << "even L"
              << "odd L\n";
    for (const auto& e : fixed_point_tables()) {
      if (e.geometry != g) continue;
      std::cout << std::left << std::setw(16) << e.quantity << std::setw(12) << e.state << std::setw(14) << fmt(e.even_l)
                << fmt(e.odd_l) << "\n";
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer Renyi entropy of spin chains via Pauli MPS"};
  app.require_subcommand(1);

  Common run_opts, oracle_opts;
  bool dry = false;
  auto* run = app.add_subcommand("run", "evaluate a configured scan or disorder campaign, writing CSV");
  add_common(run, run_opts);
  run->add_flag("--dry-run", dry, "print the resolved configuration and exit");

  bool quick = false, verbose = false;
  std::vector<int> only;
  std::string golden = TOPOMAGIC_GOLDEN_PATH;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_flag("--quick", quick, "fixed-point tables only");
  verify->add_option("--criterion", only, "run only these criteria (1-9)")->check(CLI::Range(1, 9));
  verify->add_option("--golden", golden, "golden_tables.csv (empty string skips golden comparisons)");
  verify->add_flag("-v,--verbose", verbose, "print every individual check");

  auto* orc = app.add_subcommand("oracle", "exact-diagonalization reference for a small chain (JSON)");
  add_common(orc, oracle_opts);

  bool golden_csv_flag = false;
  auto* tables = app.add_subcommand("tables", "print the fixed-point tables");
  tables->add_flag("--golden-csv", golden_csv_flag, "emit the golden reference CSV instead");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_opts, dry);
    if (*verify) return cmd_verify(quick, only, golden, verbose);
    if (*orc) return cmd_oracle(oracle_opts);
    if (*tables) return cmd_tables(golden_csv_flag);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

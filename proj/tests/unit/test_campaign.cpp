#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "topomagic/campaign.hpp"
#include "topomagic/errors.hpp"

using namespace topomagic;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("topomagic_campaign_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_scan(const fs::path& out) {
  RunConfig c = parse_config(
      "model.kind = tfim\nmodel.L = 8\nsolver.chi = 16\ndoping.pattern = all\n"
      "sre.geometry = quad,tri\npartition.tri = 3,2,3\nscan.parameter = h\nscan.grid = 0,0.5,1.5\nedge = true\n");
  c.output = out;
  return c;
}
}  // namespace

TEST_CASE("task expansion order and seeds") {
  RunConfig c = parse_config(
      "model.kind = cluster_ising_disordered\nmodel.L = 8\nscan.parameter = h\nscan.grid = 0.1,0.2\n"
      "disorder.grid = 0,1\ndisorder.samples = 3\ndisorder.seed = 5\n");
  const auto t = expand_tasks(c);
  REQUIRE(t.size() == 12);
  CHECK(t[0].parameter == 0.1);
  CHECK(t[3].disorder == 1.0);
  CHECK(t[3].realization == 0);
  CHECK(t[6].parameter == 0.2);
  CHECK(t[1].seed != t[2].seed);
  CHECK(t[1].seed == t[7].seed);  // same realization at every scan point
  const auto m = model_for(c, t[4]);
  CHECK(m.couplings.size() == 7);
  CHECK(m.h == 0.1);
}

TEST_CASE("scan writes one ok row per point and resumes without recomputing") {
  const auto dir = scratch("scan");
  RunConfig c = small_scan(dir / "scan.csv");
  auto s = run_campaign(c);
  CHECK(s.total == 3);
  CHECK(s.computed == 3);
  CHECK(s.failed == 0);
  const auto first = slurp(c.output);
  CHECK(first.rfind("# topomagic-csv 1\n", 0) == 0);

  const auto t = read_csv(c.output);
  REQUIRE(t.rows.size() == 3);
  const auto st = t.column("status"), src = t.column("source"), m = t.column("M_quad"), e = t.column("edge");
  REQUIRE(m >= 0);
  CHECK(t.column("S_tri") >= 0);
  CHECK(t.rows[0][src] == "ghz");
  CHECK(t.rows[1][src] == "dmrg");
  for (const auto& r : t.rows) {
    CHECK(r[st] == "ok");
    CHECK(std::abs(std::stod(r[m])) < 0.05);
    CHECK(!r[e].empty());
  }

  auto again = run_campaign(c);
  CHECK(again.computed == 0);
  CHECK(again.skipped == 3);
  CHECK(slurp(c.output) == first);

  // a torn final row is dropped and recomputed to the same bytes
  {
    std::ofstream o(c.output, std::ios::binary | std::ios::trunc);
    o << first.substr(0, first.size() - 25);
  }
  auto resumed = run_campaign(c);
  CHECK(resumed.computed == 1);
  CHECK(slurp(c.output) == first);

  // a different configuration must not append to this file
  RunConfig other = c;
  other.model.length = 12;
  other.tri_sizes = {4, 4, 4};
  CHECK_THROWS_AS(run_campaign(other), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("thread count does not change the results") {
  const auto dir = scratch("threads");
  RunConfig a = small_scan(dir / "a.csv");
  RunConfig b = small_scan(dir / "b.csv");
  b.threads = 3;
  run_campaign(a);
  run_campaign(b);
  const auto ta = read_csv(a.output), tb = read_csv(b.output);
  CHECK(ta.rows == tb.rows);
  fs::remove_all(dir);
}

TEST_CASE("checkpoints are written and reused") {
  const auto dir = scratch("ckpt");
  RunConfig c = small_scan(dir / "c.csv");
  c.checkpoint_dir = dir / "states";
  const TaskPoint task = expand_tasks(c)[1];
  const auto a = evaluate_point(c, task);
  CHECK(fs::exists(c.checkpoint_dir / "point_000001.tmps"));
  const auto b = evaluate_point(c, task);
  CHECK(b.source == "checkpoint");
  CHECK(b.sre[0].m_topo == doctest::Approx(a.sre[0].m_topo).epsilon(1e-10));
  CHECK(b.energy == doctest::Approx(a.energy).epsilon(1e-10));
  fs::remove_all(dir);
}

TEST_CASE("disorder campaign summary: mean and standard error per point") {
  const auto dir = scratch("disorder");
  RunConfig c = parse_config(
      "model.kind = cluster_ising_disordered\nmodel.L = 8\nmodel.h = 0.2\nsolver.chi = 16\n"
      "doping.pattern = all\ndisorder.grid = 0,0.6\ndisorder.samples = 3\nedge = true\n");
  c.output = dir / "dis.csv";
  auto s = run_campaign(c);
  CHECK(s.computed == 6);
  REQUIRE(fs::exists(s.summary_path));

  const auto t = read_csv(c.output);
  const auto im = t.column("M_quad"), id = t.column("disorder");
  std::vector<double> xs;
  for (const auto& r : t.rows)
    if (std::stod(r[id]) == 0.6) xs.push_back(std::stod(r[im]));
  REQUIRE(xs.size() == 3);
  const double mean = (xs[0] + xs[1] + xs[2]) / 3;
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  const double se = std::sqrt(var / 2 / 3);

  bool found = false;
  for (const auto& st : summarize_disorder(c.output)) {
    if (st.column != "M_quad" || st.disorder != 0.6) continue;
    found = true;
    CHECK(st.count == 3);
    CHECK(st.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(st.stderr_ == doctest::Approx(se).epsilon(1e-9));
  }
  CHECK(found);
  const auto summary = read_csv(s.summary_path);
  CHECK(summary.rows.size() >= 2);
  fs::remove_all(dir);
}

TEST_CASE("numerical failures are recorded, not thrown") {
  RunConfig c = small_scan(fs::temp_directory_path() / "unused.csv");
  c.quad_sizes = {1, 1, 1, 1};  // partition length does not match L
  const auto r = evaluate_point(c, expand_tasks(c)[1]);
  CHECK(r.status() == "error");
  CHECK(!r.error.empty());
}

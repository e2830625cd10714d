#include "doctest.h"
#include "topomagic/config.hpp"
#include "topomagic/errors.hpp"

using namespace topomagic;

namespace {
std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}
}  // namespace

TEST_CASE("parse a full configuration") {
  const auto c = parse_config(R"(
# cluster-Ising scan
model.kind = cluster_ising
model.L = 12
model.J = 1
solver.chi = 48
doping.pattern = first
doping.count = 3
sre.geometry = quad, tri
sre.chi_p = 80
scan.parameter = h
scan.grid = 0:1:0.25
output.path = out/scan.csv   # trailing comment
run.threads = 2
)");
  CHECK(c.model.kind == ModelKind::cluster_ising);
  CHECK(c.model.length == 12);
  CHECK(c.solver.max_bond == 48);
  CHECK(c.doping.resolve(12) == std::vector<std::size_t>{0, 1, 2});
  CHECK(c.geometries.size() == 2);
  CHECK(c.pauli_policy.max_bond == 80);
  CHECK(c.scan.grid == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
  CHECK(c.output == "out/scan.csv");
  CHECK(c.threads == 2);
  CHECK(c.effective_tilt() == 1e-3);
}

TEST_CASE("to_text round trips") {
  auto c = parse_config(
      "model.kind = cluster_ising_disordered\nmodel.L = 8\ndisorder.grid = 0,0.5,1\ndisorder.samples = 7\n"
      "doping.pattern = list\ndoping.sites = 1,4\npartition.quad = 1,2,2,3\nsolver.tilt = 0.01\nsre.cutoff = 1e-13\n");
  auto d = parse_config(to_text(c));
  CHECK(to_text(d) == to_text(c));
  CHECK(d.disorder.strengths == std::vector<double>{0, 0.5, 1});
  CHECK(d.quad_sizes == std::vector<std::size_t>{1, 2, 2, 3});
  CHECK(d.doping.sites == std::vector<std::size_t>{1, 4});
  CHECK(d.effective_tilt() == 0.01);
  CHECK(d.pauli_policy.cutoff == 1e-13);
}

TEST_CASE("grid syntax") {
  CHECK(parse_grid("g", "0.1:0.3:0.1").size() == 3);
  CHECK(parse_grid("g", "1, 2 ,3") == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(parse_grid("g", "1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("g", "1:2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("g", "a,b"), ConfigError);
}

TEST_CASE("errors name the offending key") {
  CHECK(key_of("model.L = 8\ndoping.pattern = first\ndoping.count = 9\n") == "doping.count");
  CHECK(key_of("scan.parameter = h\nscan.grid = 1,0.5\n") == "scan.grid");
  CHECK(key_of("model.kind = aklt\nmodel.L = 6\ndoping.pattern = all\n") == "doping.pattern");
  CHECK(key_of("model.kind = tfim\ndisorder.grid = 0.5\n") == "disorder.grid");
  CHECK(key_of("model.L = 8\npartition.quad = 2,2,2,3\n") == "partition.quad");
  CHECK(key_of("nonsense.key = 1\n") == "nonsense.key");
  CHECK(key_of("model.kind = potts\n") == "model.kind");
  CHECK(key_of("model.L = -3\n") == "model.L");
  CHECK(key_of("just words\n") == "line 1");
  CHECK(key_of("model.L = 8\ndoping.pattern = list\ndoping.sites = 2,2\n") == "doping.sites");
}

TEST_CASE("defaults") {
  RunConfig c;
  c.model.kind = ModelKind::aklt;
  CHECK(c.effective_tilt() == 0.1);
  CHECK(c.disorder.samples == 100);
  CHECK(c.doping.resolve(5).empty());
  CHECK_NOTHROW(c.validate());
}

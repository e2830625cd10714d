// One line per criterion; exit status 1 names the failing ones.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topomagic/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  bool quick = false, verbose = false;
  std::string golden = TOPOMAGIC_GOLDEN_PATH;
  std::vector<int> only;
  app.add_flag("--quick", quick, "fixed-point tables only");
  app.add_option("--golden", golden, "golden_tables.csv");
  app.add_option("--criterion", only, "subset of criteria")->check(CLI::Range(1, 9));
  app.add_flag("-v,--verbose", verbose, "log every check to stderr");
  CLI11_PARSE(app, argc, argv);

  topomagic::AcceptanceOptions opt;
  opt.level = quick ? topomagic::AcceptanceLevel::quick : topomagic::AcceptanceLevel::full;
  opt.golden = golden;
  opt.only = only;
  opt.log = verbose ? &std::cerr : nullptr;

  std::vector<int> failed;
  try {
    for (const auto& r : topomagic::run_acceptance(opt)) {
      std::cout << topomagic::format_result(r) << std::endl;
      if (!r.passed) failed.push_back(r.id);
    }
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << std::endl;
    return 2;
  }
  if (failed.empty()) return 0;
  std::cout << "failing criteria:";
  for (int id : failed) std::cout << " " << id;
  std::cout << std::endl;
  return 1;
}

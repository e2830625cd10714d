#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/mps_io.hpp"

using namespace topomagic;

TEST_CASE("binary round trip is exact") {
  std::mt19937_64 rng(11);
  auto psi = Mps::random(6, 3, 4, rng);
  std::stringstream buf;
  write_mps(buf, psi);
  auto back = read_mps(buf);
  REQUIRE(back.length() == 6);
  CHECK(back.local_dim() == 3);
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(back.site(i).shape() == psi.site(i).shape());
    for (std::size_t k = 0; k < psi.site(i).size(); ++k) CHECK(back.site(i).data()[k] == psi.site(i).data()[k]);
  }
}

TEST_CASE("files round trip and corrupt input is rejected") {
  std::mt19937_64 rng(12);
  auto psi = Mps::random(4, 2, 2, rng);
  const auto dir = std::filesystem::temp_directory_path() / "topomagic_io_test";
  std::filesystem::create_directories(dir);
  save_mps(dir / "a.tmps", psi);
  CHECK(std::abs(overlap(load_mps(dir / "a.tmps"), psi)) == doctest::Approx(1.0));

  std::string bytes;
  {
    std::ifstream in(dir / "a.tmps", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS(read_mps(truncated));
  std::stringstream garbage("not an mps at all");
  CHECK_THROWS(read_mps(garbage));
  CHECK_THROWS(load_mps(dir / "missing.tmps"));
  std::filesystem::remove_all(dir);
}

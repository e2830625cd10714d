#include <random>

#include "doctest.h"
#include "topomagic/entanglement.hpp"
#include "topomagic/hamiltonians.hpp"

using namespace topomagic;

TEST_CASE("topological entanglement of the fixed-point states") {
  CHECK(topological_ee(cluster_state(8), PartitionSpec::quad(8)).s_topo == doctest::Approx(2.0));
  CHECK(topological_ee(cluster_state(12), PartitionSpec::tri(12)).s_topo == doctest::Approx(2.0));
  CHECK(topological_ee(ghz_state(12), PartitionSpec::tri(12)).s_topo == doctest::Approx(1.0));
  CHECK(std::abs(topological_ee(ghz_state(8), PartitionSpec::quad(8)).s_topo) < 1e-10);
  CHECK(std::abs(topological_ee(product_plus_state(9), PartitionSpec::tri(9)).s_topo) < 1e-10);
}

TEST_CASE("phase gates leave every region entropy unchanged") {
  std::mt19937_64 rng(41);
  auto psi = Mps::random(12, 2, 6, rng);
  std::vector<std::size_t> all(12);
  for (std::size_t i = 0; i < 12; ++i) all[i] = i;
  auto a = topological_ee(psi, PartitionSpec::quad(12));
  auto b = topological_ee(dope_with_t_gates(psi, all), PartitionSpec::quad(12));
  for (std::size_t k = 0; k < 4; ++k) CHECK(b.values[k] == doctest::Approx(a.values[k]).epsilon(1e-12));
}

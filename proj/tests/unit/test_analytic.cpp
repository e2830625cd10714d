#include <cmath>
#include <numbers>

#include "doctest.h"
#include "topomagic/analytic.hpp"
#include "topomagic/hamiltonians.hpp"
#include "topomagic/pauli_mps.hpp"

using namespace topomagic;

namespace {
const double kT = std::log2(4.0 / 3.0);
}

TEST_CASE("GHZ and product closed forms at the T angle") {
  const double t = std::numbers::pi / 4;
  CHECK(ghz_doped_sre(5, t) == doctest::Approx(kT));
  CHECK(std::abs(ghz_doped_sre(6, t)) < 1e-12);
  CHECK(std::abs(ghz_doped_sre(7, 0.0)) < 1e-12);
  auto p = product_doped_sre(6, 2, t);
  CHECK(p.full == doctest::Approx(6 * kT));
  CHECK(p.subsystem == doctest::Approx(2 * kT));
}

TEST_CASE("doped cluster-state case split") {
  CHECK(cluster_doped_sre(8) == doctest::Approx(8 * kT));
  CHECK(cluster_doped_sre(9) == doctest::Approx(7 * kT));
  CHECK(cluster_doped_region_sre(6, 2) == doctest::Approx(4 * kT));
  CHECK(cluster_doped_region_sre(6, 4) == doctest::Approx(2 * kT));
  for (std::size_t n : {8, 9}) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    CHECK(full_state_sre(dope_with_t_gates(cluster_state(n), all), 2) == doctest::Approx(cluster_doped_sre(n)));
  }
}

TEST_CASE("fixed-point tables") {
  const auto t = fixed_point_tables();
  CHECK(t.size() == 24);
  auto find = [&](Geometry g, const std::string& q, const std::string& s) {
    for (const auto& e : t)
      if (e.geometry == g && e.quantity == q && e.state == s) return e;
    FAIL("missing entry");
    return t.front();
  };
  CHECK(find(Geometry::quad, "M_topo N_T=L", "CL").value(8) == doctest::Approx(2 * kT));
  CHECK(find(Geometry::tri, "M_topo N_T=1", "FM").value(8) == doctest::Approx(kT));
  CHECK(find(Geometry::tri, "M_topo N_T=L", "FM").value(9) == doctest::Approx(kT));
  CHECK(find(Geometry::tri, "M_topo N_T=L", "FM").value(8) == 0.0);
  CHECK(find(Geometry::tri, "S_topo", "FM").value(8) == doctest::Approx(1.0));
  for (const auto& e : t)
    if (e.state == "PM") CHECK(e.value(8) == 0.0);
}

TEST_CASE("TCI closed form endpoints and engine agreement") {
  CHECK(tci_l8_closed_form(-1.0, Geometry::quad) == doctest::Approx(2 * kT));
  CHECK(std::abs(tci_l8_closed_form(0.0, Geometry::quad)) < 1e-12);
  CHECK(std::abs(tci_l8_closed_form(1.0, Geometry::quad)) < 1e-12);
  SreOptions o;
  o.policy = {4096, 0.0, false};
  for (double g : {-0.7, 0.2}) {
    auto psi = tci_ground_state(8, g, true);
    for (Geometry geo : {Geometry::quad, Geometry::tri})
      CHECK(topological_sre(psi, tci_l8_partition(geo), 2, o).m_topo ==
            doctest::Approx(tci_l8_closed_form(g, geo)).epsilon(1e-10));
  }
}

TEST_CASE("edge correlator of the cluster state") {
  auto c = cluster_state(12);
  const auto p = default_edge_string(12);
  CHECK(std::abs(edge_correlator(c, p)) == doctest::Approx(1.0));
  CHECK(std::abs(edge_correlator(product_plus_state(12), p)) < 1e-12);
}

#include "doctest.h"
#include "topomagic/errors.hpp"
#include "topomagic/partition.hpp"

using namespace topomagic;

TEST_CASE("quadripartition windows are A B D C") {
  auto p = PartitionSpec::quad(8);
  auto r = p.regions();
  CHECK(r[0] == SiteSet{0, 1, 2, 3});        // AB
  CHECK(r[1] == SiteSet{2, 3, 6, 7});        // BC, split by D
  CHECK(r[2] == SiteSet{2, 3});              // B
  CHECK(r[3] == SiteSet{0, 1, 2, 3, 6, 7});  // ABC
}

TEST_CASE("tripartition covers the chain") {
  auto p = PartitionSpec::custom(Geometry::tri, {2, 3, 2});
  CHECK(p.length == 7);
  auto r = p.regions();
  CHECK(r[0] == SiteSet{0, 1, 2, 3, 4});
  CHECK(r[1] == SiteSet{2, 3, 4, 5, 6});
  CHECK(r[2] == SiteSet{2, 3, 4});
  CHECK(r[3].size() == 7);
}

TEST_CASE("invalid partitions") {
  CHECK_THROWS_AS(PartitionSpec::quad(10), DimensionError);
  CHECK_THROWS_AS(PartitionSpec::tri(8), DimensionError);
  CHECK_THROWS_AS(PartitionSpec::custom(Geometry::quad, {1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(PartitionSpec::custom(Geometry::tri, {1, 0, 3}), DimensionError);
  CHECK(parse_geometry("tri") == Geometry::tri);
  CHECK(to_string(Geometry::quad) == "quad");
  CHECK_THROWS(parse_geometry("hex"));
}

#include "topomagic/partition.hpp"

#include <numeric>

#include "topomagic/errors.hpp"

namespace topomagic {

Geometry parse_geometry(std::string_view text) {
  if (text == "quad") return Geometry::quad;
  if (text == "tri") return Geometry::tri;
  throw std::invalid_argument("unknown geometry '" + std::string(text) + "' (expected tri or quad)");
}

std::string to_string(Geometry g) { return g == Geometry::quad ? "quad" : "tri"; }

PartitionSpec PartitionSpec::quad(std::size_t length) {
  if (length < 4 || length % 4 != 0) {
    throw DimensionError("quadripartition needs L divisible by 4, got L=" + std::to_string(length));
  }
  const std::size_t q = length / 4;
  return custom(Geometry::quad, {q, q, q, q});
}

PartitionSpec PartitionSpec::tri(std::size_t length) {
  if (length < 3 || length % 3 != 0) {
    throw DimensionError("tripartition needs L divisible by 3, got L=" + std::to_string(length));
  }
  const std::size_t q = length / 3;
  return custom(Geometry::tri, {q, q, q});
}

PartitionSpec PartitionSpec::make(Geometry g, std::size_t length) {
  return g == Geometry::quad ? quad(length) : tri(length);
}

PartitionSpec PartitionSpec::custom(Geometry g, const std::vector<std::size_t>& sizes) {
  const std::size_t want = g == Geometry::quad ? 4 : 3;
  if (sizes.size() != want) throw DimensionError("wrong number of partition windows");
  for (auto s : sizes) {
    if (s == 0) throw DimensionError("partition windows must be non-empty");
  }
  PartitionSpec p;
  p.geometry = g;
  p.length = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::size_t at = 0;
  auto next = [&](std::size_t n) {
    Window w{at, at + n};
    at += n;
    return w;
  };
  p.a = next(sizes[0]);
  p.b = next(sizes[1]);
  if (g == Geometry::quad) p.d = next(sizes[2]);
  p.c = next(sizes.back());
  return p;
}

SiteSet sites_of(std::initializer_list<Window> windows) {
  SiteSet s;
  for (const auto& w : windows)
    for (std::size_t i = w.begin; i < w.end; ++i) s.push_back(i);
  return s;
}

std::array<SiteSet, 4> PartitionSpec::regions() const {
  return {sites_of({a, b}), sites_of({b, c}), sites_of({b}), sites_of({a, b, c})};
}

}  // namespace topomagic

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topomagic/mps.hpp"

namespace topomagic {

enum class Geometry { tri, quad };

Geometry parse_geometry(std::string_view text);
std::string to_string(Geometry g);

/// Half-open site range [begin, end), 0-based.
struct Window {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Named contiguous windows A, B, C (and D for the quadripartition, sitting
/// between B and C). Windows are disjoint and cover the chain in the order
/// A B [D] C.
struct PartitionSpec {
  Geometry geometry = Geometry::quad;
  std::size_t length = 0;
  Window a, b, c, d;  // d is empty for tri

  /// Equal quarters; throws DimensionError unless L % 4 == 0.
  static PartitionSpec quad(std::size_t length);
  /// Equal thirds; throws DimensionError unless L % 3 == 0.
  static PartitionSpec tri(std::size_t length);
  static PartitionSpec make(Geometry g, std::size_t length);
  /// Explicit window sizes, e.g. tri {2, 4, 2} or quad {a, b, d, c}.
  static PartitionSpec custom(Geometry g, const std::vector<std::size_t>& sizes);

  /// The four regions of the topological combination, in the order
  /// AB, BC, B, ABC.
  std::array<SiteSet, 4> regions() const;
};

inline constexpr std::array<const char*, 4> kRegionNames{"AB", "BC", "B", "ABC"};

SiteSet sites_of(std::initializer_list<Window> windows);

}  // namespace topomagic

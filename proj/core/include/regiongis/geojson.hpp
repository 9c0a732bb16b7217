#pragma once

// Strict reader/writer for the GeoJSON subset used by district maps:
// FeatureCollection of Features whose geometry is a Point, Polygon or
// MultiPolygon and whose properties are flat scalars.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "regiongis/geometry.hpp"

namespace regiongis {

using PropertyValue = std::variant<std::nullptr_t, bool, double, std::string>;
using Properties = std::map<std::string, PropertyValue>;
using Geometry = std::variant<Coordinate, Polygon, MultiPolygon>;

struct Feature {
  std::string id;
  Geometry geometry;
  Properties properties;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct FeatureCollection {
  std::vector<Feature> features;

  friend bool operator==(const FeatureCollection&, const FeatureCollection&) = default;
};

/// Parses and validates a FeatureCollection. Rings are checked for closure,
/// size, repeated positions, self-intersection and zero area; polygons come
/// back with normalized winding. Throws Error with one of MalformedDocument,
/// UnsupportedGeometry, InvalidRing, CoordinateOutOfRange or
/// DuplicateFeatureId; nothing is returned on failure.
///
/// The feature id comes from the GeoJSON "id" member or, failing that, from a
/// string property named "id". When both are present they must agree.
FeatureCollection parse_feature_collection(std::string_view text);

/// Deterministic serialization: fixed member order, sorted property keys,
/// one feature per line, numbers with at most 9 fractional digits.
std::string serialize_feature_collection(const FeatureCollection& fc);

/// Shortest rendering of `v` with at most 9 fractional digits; integral
/// values print without a decimal point.
std::string format_number(double v);

}  // namespace regiongis

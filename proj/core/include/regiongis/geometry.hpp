#pragma once

// Planar computational geometry over WGS84 longitude/latitude.
//
// Every predicate treats (lon, lat) as plain cartesian (x, y). Metric areas
// use a per-ring equirectangular approximation and are only meant for
// county-scale extents.

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace regiongis {

struct Coordinate {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// True when both components are finite and within [-180,180] x [-90,90].
bool coordinate_in_range(const Coordinate& c) noexcept;

/// Closed sequence of positions; first == last.
struct LinearRing {
  std::vector<Coordinate> positions;

  friend bool operator==(const LinearRing&, const LinearRing&) = default;
};

struct Polygon {
  LinearRing exterior;
  std::vector<LinearRing> holes;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct MultiPolygon {
  std::vector<Polygon> parts;

  friend bool operator==(const MultiPolygon&, const MultiPolygon&) = default;
};

/// Any geometry with area.
using Areal = std::variant<Polygon, MultiPolygon>;

struct BBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Mean Earth radius used by the equirectangular area scaling.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Rings with |planar area| at or below this are considered degenerate.
inline constexpr double kDegenerateAreaSqDeg = 1e-12;

// --- area -----------------------------------------------------------------

/// Shoelace area in square degrees; positive for counter-clockwise rings.
double ring_area_signed(const LinearRing& ring) noexcept;

/// |ring area| scaled by (pi R / 180)^2 cos(mid latitude of the ring's bbox).
double ring_area_km2(const LinearRing& ring) noexcept;

/// Exterior areas minus hole areas, in km^2, never negative.
double polygon_area_km2(const Polygon& poly) noexcept;
double polygon_area_km2(const MultiPolygon& poly) noexcept;
double polygon_area_km2(const Areal& geom) noexcept;

/// Net planar area (exteriors minus holes) in square degrees.
double planar_area(const Polygon& poly) noexcept;
double planar_area(const MultiPolygon& poly) noexcept;
double planar_area(const Areal& geom) noexcept;

// --- centroid -------------------------------------------------------------

/// Area-weighted centroid of the vertex polygon(s). Throws
/// Error(ZeroAreaGeometry) when the net planar area is <= 1e-12.
Coordinate centroid(const Polygon& poly);
Coordinate centroid(const MultiPolygon& poly);
Coordinate centroid(const Areal& geom);

// --- bounding boxes -------------------------------------------------------

BBox bbox_of(const Coordinate& c) noexcept;
BBox bbox_of(const LinearRing& ring) noexcept;
BBox bbox_of(const Polygon& poly) noexcept;
BBox bbox_of(const MultiPolygon& poly) noexcept;
BBox bbox_of(const Areal& geom) noexcept;

BBox bbox_union(const BBox& a, const BBox& b) noexcept;

/// Closed-interval containment.
bool bbox_contains(const BBox& b, const Coordinate& p) noexcept;

/// Closed-interval overlap; boxes touching at an edge or corner intersect.
bool bbox_intersects(const BBox& a, const BBox& b) noexcept;

// --- containment ----------------------------------------------------------

/// Even-odd ray casting. Points lying on any ring edge or vertex are inside.
bool contains_point(const Polygon& poly, const Coordinate& p) noexcept;
bool contains_point(const MultiPolygon& poly, const Coordinate& p) noexcept;
bool contains_point(const Areal& geom, const Coordinate& p) noexcept;

// --- winding & validation -------------------------------------------------

LinearRing reversed(const LinearRing& ring);

/// Exterior counter-clockwise, holes clockwise. Idempotent.
Polygon normalize_winding(Polygon poly);
MultiPolygon normalize_winding(MultiPolygon poly);
Areal normalize_winding(Areal geom);

/// Describes the first structural defect of a ring, or nullopt when the ring
/// is valid: fewer than 4 positions, not closed, repeated consecutive
/// positions, self-intersection, or area below kDegenerateAreaSqDeg.
/// Coordinate ranges are not checked here.
std::optional<std::string> ring_defect(const LinearRing& ring);

}  // namespace regiongis

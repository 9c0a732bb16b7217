#include "regiongis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "regiongis/error.hpp"

namespace regiongis {
namespace {

// Twice the signed area of (a, b, c); > 0 when c lies left of a->b.
double cross(const Coordinate& a, const Coordinate& b, const Coordinate& c) noexcept {
  return (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
}

bool within_segment_box(const Coordinate& a, const Coordinate& b, const Coordinate& p) noexcept {
  return std::min(a.lon, b.lon) <= p.lon && p.lon <= std::max(a.lon, b.lon) &&
         std::min(a.lat, b.lat) <= p.lat && p.lat <= std::max(a.lat, b.lat);
}

bool on_segment(const Coordinate& a, const Coordinate& b, const Coordinate& p) noexcept {
  return cross(a, b, p) == 0.0 && within_segment_box(a, b, p);
}

bool on_ring_boundary(const LinearRing& ring, const Coordinate& p) noexcept {
  const auto& pts = ring.positions;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (on_segment(pts[i], pts[i + 1], p)) return true;
  }
  return false;
}

// PNPOLY crossing parity; boundary handling is left to the caller.
bool ray_cast_inside(const LinearRing& ring, const Coordinate& p) noexcept {
  const auto& pts = ring.positions;
  bool inside = false;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Coordinate& a = pts[i];
    const Coordinate& b = pts[i + 1];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(const Coordinate& p1, const Coordinate& p2,
                        const Coordinate& q1, const Coordinate& q2) noexcept {
  const int d1 = sign(cross(q1, q2, p1));
  const int d2 = sign(cross(q1, q2, p2));
  const int d3 = sign(cross(p1, p2, q1));
  const int d4 = sign(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_segment_box(q1, q2, p1)) return true;
  if (d2 == 0 && within_segment_box(q1, q2, p2)) return true;
  if (d3 == 0 && within_segment_box(p1, p2, q1)) return true;
  if (d4 == 0 && within_segment_box(p1, p2, q2)) return true;
  return false;
}

struct Moments {
  double area = 0.0;  // signed, square degrees
  double mx = 0.0;    // first moments relative to the reference point
  double my = 0.0;
};

// Exterior rings count positively and holes negatively regardless of the
// stored orientation.
void accumulate_ring(const LinearRing& ring, const Coordinate& ref, double role, Moments& m) noexcept {
  const auto& pts = ring.positions;
  double a2 = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double x0 = pts[i].lon - ref.lon, y0 = pts[i].lat - ref.lat;
    const double x1 = pts[i + 1].lon - ref.lon, y1 = pts[i + 1].lat - ref.lat;
    const double c = x0 * y1 - x1 * y0;
    a2 += c;
    mx += (x0 + x1) * c;
    my += (y0 + y1) * c;
  }
  const double orient = a2 < 0.0 ? -role : role;
  m.area += orient * a2 / 2.0;
  m.mx += orient * mx / 6.0;
  m.my += orient * my / 6.0;
}

void accumulate_polygon(const Polygon& poly, const Coordinate& ref, Moments& m) noexcept {
  accumulate_ring(poly.exterior, ref, 1.0, m);
  for (const auto& hole : poly.holes) accumulate_ring(hole, ref, -1.0, m);
}

Coordinate finish_centroid(const Moments& m, const Coordinate& ref, const BBox& box) {
  if (!(m.area > kDegenerateAreaSqDeg)) {
    throw Error(ErrorCode::ZeroAreaGeometry, "geometry has zero planar area");
  }
  Coordinate c{ref.lon + m.mx / m.area, ref.lat + m.my / m.area};
  // Rounding can push a centroid of a thin part a hair outside its hull.
  c.lon = std::clamp(c.lon, box.min_lon, box.max_lon);
  c.lat = std::clamp(c.lat, box.min_lat, box.max_lat);
  return c;
}

Coordinate reference_point(const Polygon& poly) noexcept {
  return poly.exterior.positions.empty() ? Coordinate{} : poly.exterior.positions.front();
}

}  // namespace

bool coordinate_in_range(const Coordinate& c) noexcept {
  return std::isfinite(c.lon) && std::isfinite(c.lat) && c.lon >= -180.0 && c.lon <= 180.0 &&
         c.lat >= -90.0 && c.lat <= 90.0;
}

double ring_area_signed(const LinearRing& ring) noexcept {
  const auto& pts = ring.positions;
  if (pts.size() < 3) return 0.0;
  // Shoelace relative to the first vertex keeps the result translation-stable.
  const Coordinate& o = pts.front();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    sum += (pts[i].lon - o.lon) * (pts[i + 1].lat - o.lat) - (pts[i + 1].lon - o.lon) * (pts[i].lat - o.lat);
  }
  return sum / 2.0;
}

double ring_area_km2(const LinearRing& ring) noexcept {
  if (ring.positions.empty()) return 0.0;
  const BBox box = bbox_of(ring);
  const double mid_lat = (box.min_lat + box.max_lat) / 2.0;
  const double deg = std::numbers::pi * kEarthRadiusKm / 180.0;
  return std::abs(ring_area_signed(ring)) * deg * deg * std::cos(mid_lat * std::numbers::pi / 180.0);
}

double polygon_area_km2(const Polygon& poly) noexcept {
  double area = ring_area_km2(poly.exterior);
  for (const auto& hole : poly.holes) area -= ring_area_km2(hole);
  return std::max(area, 0.0);
}

double polygon_area_km2(const MultiPolygon& poly) noexcept {
  double area = 0.0;
  for (const auto& part : poly.parts) area += polygon_area_km2(part);
  return area;
}

double polygon_area_km2(const Areal& geom) noexcept {
  return std::visit([](const auto& g) { return polygon_area_km2(g); }, geom);
}

double planar_area(const Polygon& poly) noexcept {
  double area = std::abs(ring_area_signed(poly.exterior));
  for (const auto& hole : poly.holes) area -= std::abs(ring_area_signed(hole));
  return area;
}

double planar_area(const MultiPolygon& poly) noexcept {
  double area = 0.0;
  for (const auto& part : poly.parts) area += planar_area(part);
  return area;
}

double planar_area(const Areal& geom) noexcept {
  return std::visit([](const auto& g) { return planar_area(g); }, geom);
}

Coordinate centroid(const Polygon& poly) {
  const Coordinate ref = reference_point(poly);
  Moments m;
  accumulate_polygon(poly, ref, m);
  return finish_centroid(m, ref, bbox_of(poly));
}

Coordinate centroid(const MultiPolygon& poly) {
  if (poly.parts.empty()) throw Error(ErrorCode::ZeroAreaGeometry, "empty multipolygon");
  const Coordinate ref = reference_point(poly.parts.front());
  Moments m;
  for (const auto& part : poly.parts) accumulate_polygon(part, ref, m);
  return finish_centroid(m, ref, bbox_of(poly));
}

Coordinate centroid(const Areal& geom) {
  return std::visit([](const auto& g) { return centroid(g); }, geom);
}

BBox bbox_of(const Coordinate& c) noexcept { return {c.lon, c.lat, c.lon, c.lat}; }

BBox bbox_of(const LinearRing& ring) noexcept {
  if (ring.positions.empty()) return {};
  BBox box = bbox_of(ring.positions.front());
  for (const auto& p : ring.positions) {
    box.min_lon = std::min(box.min_lon, p.lon);
    box.min_lat = std::min(box.min_lat, p.lat);
    box.max_lon = std::max(box.max_lon, p.lon);
    box.max_lat = std::max(box.max_lat, p.lat);
  }
  return box;
}

// Holes lie inside the exterior, so the exterior alone determines the hull.
BBox bbox_of(const Polygon& poly) noexcept { return bbox_of(poly.exterior); }

BBox bbox_of(const MultiPolygon& poly) noexcept {
  if (poly.parts.empty()) return {};
  BBox box = bbox_of(poly.parts.front());
  for (const auto& part : poly.parts) box = bbox_union(box, bbox_of(part));
  return box;
}

BBox bbox_of(const Areal& geom) noexcept {
  return std::visit([](const auto& g) { return bbox_of(g); }, geom);
}

BBox bbox_union(const BBox& a, const BBox& b) noexcept {
  return {std::min(a.min_lon, b.min_lon), std::min(a.min_lat, b.min_lat),
          std::max(a.max_lon, b.max_lon), std::max(a.max_lat, b.max_lat)};
}

bool bbox_contains(const BBox& b, const Coordinate& p) noexcept {
  return b.min_lon <= p.lon && p.lon <= b.max_lon && b.min_lat <= p.lat && p.lat <= b.max_lat;
}

bool bbox_intersects(const BBox& a, const BBox& b) noexcept {
  return a.min_lon <= b.max_lon && b.min_lon <= a.max_lon && a.min_lat <= b.max_lat &&
         b.min_lat <= a.max_lat;
}

bool contains_point(const Polygon& poly, const Coordinate& p) noexcept {
  if (on_ring_boundary(poly.exterior, p)) return true;
  for (const auto& hole : poly.holes) {
    if (on_ring_boundary(hole, p)) return true;
  }
  if (!ray_cast_inside(poly.exterior, p)) return false;
  for (const auto& hole : poly.holes) {
    if (ray_cast_inside(hole, p)) return false;
  }
  return true;
}

bool contains_point(const MultiPolygon& poly, const Coordinate& p) noexcept {
  return std::any_of(poly.parts.begin(), poly.parts.end(),
                     [&](const Polygon& part) { return contains_point(part, p); });
}

bool contains_point(const Areal& geom, const Coordinate& p) noexcept {
  return std::visit([&](const auto& g) { return contains_point(g, p); }, geom);
}

LinearRing reversed(const LinearRing& ring) {
  return LinearRing{{ring.positions.rbegin(), ring.positions.rend()}};
}

Polygon normalize_winding(Polygon poly) {
  if (ring_area_signed(poly.exterior) < 0.0) poly.exterior = reversed(poly.exterior);
  for (auto& hole : poly.holes) {
    if (ring_area_signed(hole) > 0.0) hole = reversed(hole);
  }
  return poly;
}

MultiPolygon normalize_winding(MultiPolygon poly) {
  for (auto& part : poly.parts) part = normalize_winding(std::move(part));
  return poly;
}

Areal normalize_winding(Areal geom) {
  return std::visit([](auto&& g) -> Areal { return normalize_winding(std::move(g)); }, std::move(geom));
}

std::optional<std::string> ring_defect(const LinearRing& ring) {
  const auto& pts = ring.positions;
  if (pts.size() < 4) {
    return "ring has " + std::to_string(pts.size()) + " positions, at least 4 required";
  }
  if (pts.front() != pts.back()) return std::string("ring is not closed");
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] == pts[i + 1]) {
      return "ring repeats position " + std::to_string(i) + " consecutively";
    }
  }

  const std::size_t n = pts.size() - 1;  // segment count
  for (std::size_t i = 0; i < n; ++i) {
    // Adjacent segments share exactly one endpoint; anything more is a spike.
    const std::size_t next = (i + 1) % n;
    const Coordinate& a = pts[i];
    const Coordinate& shared = pts[i + 1];
    const Coordinate& c = pts[next + 1];
    if (cross(a, shared, c) == 0.0) {
      const double dot = (a.lon - shared.lon) * (c.lon - shared.lon) + (a.lat - shared.lat) * (c.lat - shared.lat);
      if (dot > 0.0) return "ring doubles back on itself at position " + std::to_string(i + 1);
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1])) {
        return "ring self-intersects between segments " + std::to_string(i) + " and " + std::to_string(j);
      }
    }
  }

  if (std::abs(ring_area_signed(ring)) <= kDegenerateAreaSqDeg) {
    return std::string("ring is degenerate (zero area)");
  }
  return std::nullopt;
}

}  // namespace regiongis

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "regiongis/error.hpp"
#include "regiongis/geometry.hpp"
#include "support/test_support.hpp"

namespace regiongis {
namespace {

using testing::close_ring;
using testing::rectangle;

const LinearRing kUnitSquare = rectangle(0, 0, 1, 1);

Polygon square_with_hole() {
  return Polygon{rectangle(-0.5, -0.5, 0.5, 0.5), {reversed(rectangle(-0.25, -0.25, 0.25, 0.25))}};
}

TEST(RingArea, UnitSquareIsPositiveOne) { EXPECT_DOUBLE_EQ(ring_area_signed(kUnitSquare), 1.0); }

TEST(RingArea, ReversedSquareIsNegativeOne) { EXPECT_DOUBLE_EQ(ring_area_signed(reversed(kUnitSquare)), -1.0); }

TEST(RingArea, RightTriangle) {
  EXPECT_DOUBLE_EQ(ring_area_signed(close_ring({{0, 0}, {4, 0}, {0, 3}})), 6.0);
}

TEST(RingArea, AntisymmetryAndTranslationInvariance) {
  testing::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Coordinate center{rng.uniform(-150, 150), rng.uniform(-60, 60)};
    const auto poly = testing::random_polygon(rng, center, rng.uniform(0.01, 10));
    const double a = ring_area_signed(poly.exterior);
    EXPECT_NEAR(ring_area_signed(reversed(poly.exterior)), -a, 1e-9 * std::abs(a));

    const double dlon = rng.uniform(-20, 20), dlat = rng.uniform(-20, 20);
    LinearRing moved = poly.exterior;
    for (auto& c : moved.positions) {
      c.lon += dlon;
      c.lat += dlat;
    }
    EXPECT_NEAR(ring_area_signed(moved), a, 1e-9 * std::abs(a)) << "case " << i;
  }
}

TEST(PolygonArea, OneDegreeSquareOnEquator) {
  // (pi R / 180)^2 * cos(0), R = 6371.0088 km.
  const Polygon sq{rectangle(-0.5, -0.5, 0.5, 0.5), {}};
  EXPECT_NEAR(polygon_area_km2(sq), 12364.34586814182, 1e-6);
}

TEST(PolygonArea, HoleSubtracted) {
  // Exterior 1 sq deg minus hole 0.25 sq deg, both centered on the equator.
  const Polygon p = square_with_hole();
  const double deg = std::numbers::pi * 6371.0088 / 180.0;
  EXPECT_NEAR(polygon_area_km2(p), 9273.259401106365, 1e-6);
  EXPECT_NEAR(polygon_area_km2(p),
              (std::abs(ring_area_signed(p.exterior)) - std::abs(ring_area_signed(p.holes[0]))) * deg * deg, 1e-6);
}

TEST(PolygonArea, ScalesWithCosineOfMidLatitude) {
  const Polygon sq{rectangle(20, 10, 21, 11), {}};
  EXPECT_NEAR(polygon_area_km2(sq), 12157.30375366855, 1e-6);
}

TEST(PolygonArea, CollinearSliverIsNearZero) {
  const Polygon sliver{close_ring({{0, 0}, {1, 0}, {2, 1e-15}, {1, 1e-16}}), {}};
  EXPECT_NEAR(polygon_area_km2(sliver), 0.0, 1e-9);
}

TEST(PolygonArea, MultiPolygonSumsParts) {
  const MultiPolygon mp{{Polygon{rectangle(0, 0, 1, 1), {}}, Polygon{rectangle(2, 0, 3, 1), {}}}};
  EXPECT_NEAR(polygon_area_km2(mp), 2 * polygon_area_km2(Polygon{rectangle(0, 0, 1, 1), {}}), 1e-9);
}

TEST(Centroid, UnitSquare) {
  const Coordinate c = centroid(Polygon{kUnitSquare, {}});
  EXPECT_DOUBLE_EQ(c.lon, 0.5);
  EXPECT_DOUBLE_EQ(c.lat, 0.5);
}

TEST(Centroid, TwoEqualSquares) {
  const MultiPolygon mp{{Polygon{rectangle(0, 0, 1, 1), {}}, Polygon{rectangle(2, 0, 3, 1), {}}}};
  const Coordinate c = centroid(mp);
  EXPECT_DOUBLE_EQ(c.lon, 1.5);
  EXPECT_DOUBLE_EQ(c.lat, 0.5);
}

TEST(Centroid, ZeroAreaThrows) {
  const Polygon flat{close_ring({{0, 0}, {1, 0}, {2, 0}}), {}};
  try {
    centroid(flat);
    FAIL() << "expected ZeroAreaGeometry";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroAreaGeometry);
  }
}

TEST(Centroid, MatchesMonteCarloMeanOfConvexPolygon) {
  testing::Rng rng(2024);
  // Random convex polygon: sorted angles on an ellipse.
  std::vector<double> angles;
  for (int i = 0; i < 9; ++i) angles.push_back(rng.uniform(0, 2 * std::numbers::pi));
  std::sort(angles.begin(), angles.end());
  std::vector<Coordinate> pts;
  for (double a : angles) pts.push_back({3.0 + 1.2 * std::cos(a), -2.0 + 0.7 * std::sin(a)});
  const Polygon poly{close_ring(pts), {}};
  const BBox box = testing::oracle_bbox(poly);

  double sx = 0, sy = 0;
  std::size_t hits = 0;
  std::uniform_real_distribution<double> ux(box.min_lon, box.max_lon), uy(box.min_lat, box.max_lat);
  while (hits < 4'000'000) {
    const Coordinate p{ux(rng.engine()), uy(rng.engine())};
    if (!testing::oracle_contains(poly, p)) continue;
    sx += p.lon;
    sy += p.lat;
    ++hits;
  }
  const Coordinate c = centroid(poly);
  EXPECT_NEAR(c.lon, sx / hits, 1e-3);
  EXPECT_NEAR(c.lat, sy / hits, 1e-3);
}

TEST(Centroid, LiesInBoundingBox) {
  testing::Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const auto poly = normalize_winding(testing::random_polygon(rng, {rng.uniform(-170, 170), rng.uniform(-80, 80)},
                                                                rng.uniform(1e-4, 5)));
    EXPECT_TRUE(bbox_contains(bbox_of(poly), centroid(poly))) << "case " << i;
  }
}

TEST(BBox, Basics) {
  EXPECT_EQ(bbox_of(kUnitSquare), (BBox{0, 0, 1, 1}));
  EXPECT_TRUE(bbox_contains({0, 0, 1, 1}, {1, 1}));
  EXPECT_FALSE(bbox_contains({0, 0, 1, 1}, {1.0000001, 1}));
  EXPECT_EQ(bbox_union({0, 0, 1, 1}, {2, 2, 3, 3}), (BBox{0, 0, 3, 3}));
  EXPECT_TRUE(bbox_intersects({0, 0, 1, 1}, {1, 0, 2, 1}));
  EXPECT_FALSE(bbox_intersects({0, 0, 1, 1}, {1.5, 0, 2, 1}));
}

TEST(BBox, MatchesVertexHull) {
  testing::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto poly = testing::random_polygon(rng, {0, 0}, 3);
    EXPECT_EQ(bbox_of(poly), testing::oracle_bbox(poly));
  }
}

TEST(ContainsPoint, SquareCases) {
  const Polygon sq{kUnitSquare, {}};
  EXPECT_TRUE(contains_point(sq, {0.5, 0.5}));
  EXPECT_FALSE(contains_point(sq, {2, 2}));
}

TEST(ContainsPoint, HoleCenterIsOutside) {
  const Polygon p = normalize_winding(square_with_hole());
  EXPECT_FALSE(contains_point(p, {0, 0}));
  EXPECT_TRUE(contains_point(p, {0.4, 0.4}));
}

TEST(ContainsPoint, BoundaryCountsAsInside) {
  const Polygon p = normalize_winding(square_with_hole());
  EXPECT_TRUE(contains_point(p, {0.5, 0.0}));    // exterior edge
  EXPECT_TRUE(contains_point(p, {-0.5, -0.5}));  // exterior vertex
  EXPECT_TRUE(contains_point(p, {0.25, 0.1}));   // hole edge
  EXPECT_TRUE(contains_point(p, {0.25, 0.25}));  // hole vertex
}

TEST(ContainsPoint, AgreesWithWindingNumberOracle) {
  testing::Rng rng(99);
  std::size_t disagreements = 0;
  for (int poly_i = 0; poly_i < 50; ++poly_i) {
    const auto poly = normalize_winding(testing::random_polygon(rng, {10, 20}, rng.uniform(0.1, 2)));
    const BBox box = bbox_of(poly);
    for (int i = 0; i < 200; ++i) {
      Coordinate p{rng.uniform(box.min_lon - 0.1, box.max_lon + 0.1), rng.uniform(box.min_lat - 0.1, box.max_lat + 0.1)};
      if (i % 20 == 0) p = poly.exterior.positions[static_cast<std::size_t>(i / 20) % poly.exterior.positions.size()];
      disagreements += contains_point(poly, p) != testing::oracle_contains(poly, p);
    }
  }
  EXPECT_EQ(disagreements, 0u);
}

TEST(NormalizeWinding, ClockwiseExteriorIsReversed) {
  const Polygon cw{reversed(kUnitSquare), {}};
  const Polygon n = normalize_winding(cw);
  EXPECT_GT(ring_area_signed(n.exterior), 0.0);
  EXPECT_EQ(n.exterior, reversed(cw.exterior));
}

TEST(NormalizeWinding, AlreadyNormalizedIsUnchanged) {
  const Polygon p = normalize_winding(square_with_hole());
  EXPECT_EQ(normalize_winding(p), p);
}

TEST(NormalizeWinding, MixedMultiPolygon) {
  const MultiPolygon mp{{Polygon{reversed(rectangle(0, 0, 1, 1)), {rectangle(0.2, 0.2, 0.4, 0.4)}},
                         Polygon{rectangle(2, 0, 3, 1), {reversed(rectangle(2.2, 0.2, 2.4, 0.4))}}}};
  const MultiPolygon n = normalize_winding(mp);
  for (const auto& part : n.parts) {
    EXPECT_GT(ring_area_signed(part.exterior), 0.0);
    for (const auto& h : part.holes) EXPECT_LT(ring_area_signed(h), 0.0);
  }
}

TEST(NormalizeWinding, IdempotentOnRandomPolygons) {
  testing::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto once = normalize_winding(testing::random_polygon(rng, {0, 0}, 1));
    EXPECT_EQ(normalize_winding(once), once);
  }
}

TEST(RingDefect, AcceptsValidRings) {
  EXPECT_FALSE(ring_defect(kUnitSquare).has_value());
  testing::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto poly = testing::random_polygon(rng, {0, 0}, 1);
    EXPECT_FALSE(ring_defect(poly.exterior).has_value()) << *ring_defect(poly.exterior);
  }
}

TEST(RingDefect, RejectsStructuralProblems) {
  EXPECT_TRUE(ring_defect(LinearRing{{{0, 0}, {1, 0}, {0, 0}}}).has_value());                     // too short
  EXPECT_TRUE(ring_defect(LinearRing{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}).has_value());             // open
  EXPECT_TRUE(ring_defect(LinearRing{{{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 0}}}).has_value());     // repeat
  EXPECT_TRUE(ring_defect(close_ring({{0, 0}, {1, 1}, {1, 0}, {0, 1}})).has_value());             // bow tie
  EXPECT_TRUE(ring_defect(close_ring({{0, 0}, {2, 0}, {1, 0}, {1, 1}})).has_value());             // spike
  EXPECT_TRUE(ring_defect(close_ring({{0, 0}, {1, 0}, {2, 0}})).has_value());                     // zero area
  EXPECT_TRUE(ring_defect(close_ring({{0, 0}, {1e-7, 0}, {1e-7, 1e-7}, {0, 1e-7}})).has_value()); // 1e-14 sq deg
}

TEST(Coordinates, RangeCheck) {
  EXPECT_TRUE(coordinate_in_range({180, -90}));
  EXPECT_FALSE(coordinate_in_range({180.5, 0}));
  EXPECT_FALSE(coordinate_in_range({0, std::nan("")}));
  EXPECT_FALSE(coordinate_in_range({INFINITY, 0}));
}

}  // namespace
}  // namespace regiongis

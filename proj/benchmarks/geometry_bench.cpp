#include <benchmark/benchmark.h>

#include <random>

#include "regiongis/fixture.hpp"
#include "regiongis/geometry.hpp"

namespace {

const regiongis::Polygon& district_polygon() {
  static const auto fx = regiongis::generate_fixture(42);
  return std::get<regiongis::Polygon>(fx.districts.features[6].geometry);
}

void BM_ContainsPoint(benchmark::State& state) {
  const auto& poly = district_polygon();
  const auto box = regiongis::bbox_of(poly);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(box.min_lon, box.max_lon), uy(box.min_lat, box.max_lat);
  std::vector<regiongis::Coordinate> points(1024);
  for (auto& p : points) p = {ux(rng), uy(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(regiongis::contains_point(poly, points[i++ & 1023]));
  }
}
BENCHMARK(BM_ContainsPoint);

void BM_AreaAndCentroid(benchmark::State& state) {
  const auto& poly = district_polygon();
  for (auto _ : state) {
    benchmark::DoNotOptimize(regiongis::polygon_area_km2(poly));
    benchmark::DoNotOptimize(regiongis::centroid(poly));
  }
}
BENCHMARK(BM_AreaAndCentroid);

}  // namespace

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "regiongis/catalog.hpp"
#include "regiongis/fixture.hpp"
#include "regiongis/server.hpp"
#include "support/test_support.hpp"

namespace regiongis {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Fixture, NineteenDistrictsThreeCategories) {
  const auto fx = generate_fixture(42);
  ASSERT_EQ(fx.districts.features.size(), 19u);
  std::set<std::string> ids;
  for (const auto& f : fx.districts.features) ids.insert(f.id);
  EXPECT_EQ(*ids.begin(), "K01");
  EXPECT_EQ(*ids.rbegin(), "K19");
  EXPECT_EQ(ids.size(), 19u);
  EXPECT_EQ(fx.records.size(), 57u);
  for (const auto& r : fx.records) {
    EXPECT_TRUE(ids.contains(r.district_id));
    EXPECT_GT(r.quantity, 0.0);
  }
}

TEST(Fixture, DeterministicPerSeed) {
  const auto a = generate_fixture(42), b = generate_fixture(42), c = generate_fixture(43);
  EXPECT_EQ(serialize_feature_collection(a.districts), serialize_feature_collection(b.districts));
  EXPECT_EQ(write_records_csv(a.records), write_records_csv(b.records));
  EXPECT_NE(serialize_feature_collection(a.districts), serialize_feature_collection(c.districts));
}

// Tiles the extent: areas add up to the extent, and every sampled point falls
// in exactly one district.
TEST(Fixture, TilesTheExtentWithoutOverlap) {
  const double extent_area =
      (kFixtureExtent.max_lon - kFixtureExtent.min_lon) * (kFixtureExtent.max_lat - kFixtureExtent.min_lat);
  testing::Rng rng(4);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 1234567ull}) {
    const auto fx = generate_fixture(seed);
    double total = 0.0;
    for (const auto& f : fx.districts.features) total += planar_area(std::get<Polygon>(f.geometry));
    EXPECT_NEAR(total, extent_area, 1e-9 * extent_area) << "seed " << seed;

    for (int i = 0; i < 5000; ++i) {
      const Coordinate p{rng.uniform(kFixtureExtent.min_lon, kFixtureExtent.max_lon),
                         rng.uniform(kFixtureExtent.min_lat, kFixtureExtent.max_lat)};
      int hits = 0;
      for (const auto& f : fx.districts.features) hits += testing::oracle_contains(std::get<Polygon>(f.geometry), p);
      ASSERT_EQ(hits, 1) << "seed " << seed << " point " << p.lon << "," << p.lat;
    }
  }
}

TEST(Fixture, EveryCentroidResolvesToItsDistrictAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto fx = generate_fixture(seed);
    const auto cat = load_catalog(serialize_feature_collection(fx.districts), write_records_csv(fx.records));
    ASSERT_EQ(cat.districts().size(), 19u);
    for (const auto& [id, d] : cat.districts()) {
      ASSERT_EQ(cat.districts_at(d.centroid), std::vector<std::string>{id}) << "seed " << seed;
    }
  }
}

TEST(Fixture, WritesLoadableDirectory) {
  testing::TempDir dir("fixture");
  const auto fx = generate_fixture(42);
  write_fixture(fx, dir.path());
  EXPECT_EQ(slurp(dir.path() / kDistrictsFile), serialize_feature_collection(fx.districts));
  EXPECT_EQ(slurp(dir.path() / kRecordsFile), write_records_csv(fx.records));
  const auto cat = load_catalog_dir(dir.path());
  EXPECT_EQ(cat->districts().size(), 19u);
  EXPECT_EQ(cat->records().size(), 57u);
}

}  // namespace
}  // namespace regiongis

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "regiongis/catalog.hpp"
#include "regiongis/geojson.hpp"

namespace regiongis {

inline constexpr int kFixtureDistrictCount = 19;

/// Rectangular extent partitioned by the synthetic district map.
inline constexpr BBox kFixtureExtent{104.3, -3.2, 105.5, -1.7};

inline constexpr const char* kDistrictsFile = "districts.geojson";
inline constexpr const char* kRecordsFile = "records.csv";

struct FixtureData {
  FeatureCollection districts;
  std::vector<PotentialRecord> records;
};

/// Synthetic 19-district map tiling kFixtureExtent without overlap, plus one
/// potential record per district and category. All quantities are synthetic.
/// Output is a pure function of the seed.
FixtureData generate_fixture(std::uint64_t seed);

/// Writes districts.geojson and records.csv into `dir`, creating it if needed.
void write_fixture(const FixtureData& data, const std::filesystem::path& dir);

}  // namespace regiongis

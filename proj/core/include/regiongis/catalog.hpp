#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regiongis/geometry.hpp"
#include "regiongis/spatial_index.hpp"

namespace regiongis {

enum class PotentialCategory { Agriculture, Plantation, Industry };

inline constexpr std::array<PotentialCategory, 3> kAllCategories = {
    PotentialCategory::Agriculture, PotentialCategory::Plantation, PotentialCategory::Industry};

/// Canonical machine name: "agriculture", "plantation", "industry".
std::string_view category_name(PotentialCategory c) noexcept;
/// Indonesian display name: "pertanian", "perkebunan", "perindustrian".
std::string_view category_display_id(PotentialCategory c) noexcept;
std::string_view category_display_en(PotentialCategory c) noexcept;
/// Accepts the canonical name or the Indonesian alias.
std::optional<PotentialCategory> parse_category(std::string_view s) noexcept;

struct District {
  std::string id;
  std::string name;
  Areal geometry;
  double area_km2 = 0.0;
  Coordinate centroid;
  BBox bbox;
};

struct PotentialRecord {
  std::string district_id;
  PotentialCategory category = PotentialCategory::Agriculture;
  std::string commodity;
  double quantity = 0.0;
  std::string unit;
  int year = 0;

  friend bool operator==(const PotentialRecord&, const PotentialRecord&) = default;
};

// --- records CSV ----------------------------------------------------------

inline constexpr std::string_view kRecordsCsvHeader = "district_id,category,commodity,quantity,unit,year";

struct ParsedRecord {
  PotentialRecord record;
  std::size_t line = 0;  // 1-based; the header is line 1
};

/// Column- and value-level parse of a records table. Throws
/// Error(CsvSchemaError) or Error(NegativeQuantity), each carrying the line.
/// Cross-references are checked by load_catalog.
std::vector<ParsedRecord> parse_records_csv(std::string_view text);

/// Canonical rendering: header, one row per record in the given order, LF
/// line endings, fields quoted only when they contain ',', '"' or CR/LF.
std::string write_records_csv(std::span<const PotentialRecord> records);

// --- catalog --------------------------------------------------------------

class Catalog;

/// Parses the district GeoJSON and the records CSV and cross-checks them.
/// Throws any GeoJSON error, or Error with CsvSchemaError, UnknownDistrictId,
/// DuplicateRecordKey, NegativeQuantity (CSV errors carry the line).
/// District geometries must be Polygon or MultiPolygon.
Catalog load_catalog(std::string_view geojson, std::string_view records_csv,
                     std::size_t node_capacity = SpatialIndex::kDefaultNodeCapacity);

/// Districts joined with their potential records and a spatial index over
/// district bounding boxes. Immutable once loaded.
class Catalog {
 public:
  const std::map<std::string, District, std::less<>>& districts() const noexcept { return districts_; }
  /// Records in ingestion order.
  const std::vector<PotentialRecord>& records() const noexcept { return records_; }
  const SpatialIndex& index() const noexcept { return index_; }
  const District* find_district(std::string_view id) const;
  /// FNV-1a over the canonical serialization of districts and records.
  std::uint64_t content_hash() const noexcept { return content_hash_; }

  /// Ids of districts containing `p`, sorted; the first is the tie-break
  /// winner for points on shared borders.
  std::vector<std::string> districts_at(const Coordinate& p) const;

 private:
  friend Catalog load_catalog(std::string_view, std::string_view, std::size_t);

  std::map<std::string, District, std::less<>> districts_;
  std::vector<PotentialRecord> records_;
  SpatialIndex index_;
  std::uint64_t content_hash_ = 0;
};

struct DistrictDetail {
  const District& district;
  std::vector<PotentialRecord> records;  // sorted by (category, commodity, year)
};

/// Throws Error(UnknownDistrictId).
DistrictDetail district_detail(const Catalog& c, std::string_view district_id,
                               std::optional<PotentialCategory> category = std::nullopt);

struct CommodityTotal {
  std::string commodity;
  std::string unit;
  double total = 0.0;
  std::size_t record_count = 0;

  friend bool operator==(const CommodityTotal&, const CommodityTotal&) = default;
};

/// Sums per (commodity, unit), sorted by commodity then unit. A commodity
/// reported in two units yields two groups.
std::vector<CommodityTotal> category_totals(const Catalog& c, PotentialCategory category,
                                            std::optional<int> year = std::nullopt);

/// Distinct commodities recorded under `category`, sorted.
std::vector<std::string> commodities(const Catalog& c, PotentialCategory category);

/// Commodity with the largest summed quantity (ties to the smaller name).
std::optional<std::string> dominant_commodity(const Catalog& c, PotentialCategory category);

// --- choropleth -----------------------------------------------------------

enum class ClassificationMethod { Quantile, EqualInterval };

std::string_view to_string(ClassificationMethod m) noexcept;

struct Classification {
  ClassificationMethod method = ClassificationMethod::Quantile;
  std::vector<double> breaks;  // k - 1 thresholds; empty when there are no values
  bool insufficient_data = false;
};

/// Classes a multiset of positive values into k classes. Quantile breaks
/// sit at the nearest-rank i/k quantiles (i = 1..k-1). When there are fewer
/// than k distinct values, or those breaks are not strictly ascending, the
/// result falls back to equal intervals over [min, max] and is flagged
/// insufficient_data. Throws Error(InvalidArgument) when k < 2.
Classification classify_values(std::span<const double> values, int k);

/// Largest class whose lower break is <= v, i.e. the number of breaks <= v.
int class_of(double v, std::span<const double> breaks) noexcept;

struct ChoroplethEntry {
  std::string district_id;
  double value = 0.0;
  int class_index = 0;
  bool no_data = false;

  friend bool operator==(const ChoroplethEntry&, const ChoroplethEntry&) = default;
};

struct ChoroplethResult {
  PotentialCategory category = PotentialCategory::Agriculture;
  std::string commodity;
  int k = 5;
  Classification classification;
  std::vector<ChoroplethEntry> per_district;  // every district, sorted by id
  std::vector<std::string> units;
  int effective_classes = 0;
  std::string notice;  // non-empty when the fallback was used
};

/// A district's value is the quantity of its most recent record for
/// (category, commodity); districts without such a record, or with a zero
/// value, are no_data with class 0. Throws Error(UnknownCommodity) when no
/// record matches and Error(InvalidArgument) when k < 2.
ChoroplethResult choropleth(const Catalog& c, PotentialCategory category, std::string_view commodity, int k = 5);

}  // namespace regiongis

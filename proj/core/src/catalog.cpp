#include "regiongis/catalog.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "regiongis/error.hpp"
#include "regiongis/geojson.hpp"

namespace regiongis {
namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

District make_district(Feature feature) {
  District d;
  d.id = std::move(feature.id);
  if (const auto it = feature.properties.find("name"); it != feature.properties.end()) {
    if (const auto* s = std::get_if<std::string>(&it->second)) d.name = *s;
  }
  if (d.name.empty()) d.name = d.id;

  if (auto* poly = std::get_if<Polygon>(&feature.geometry)) {
    d.geometry = std::move(*poly);
  } else if (auto* multi = std::get_if<MultiPolygon>(&feature.geometry)) {
    d.geometry = std::move(*multi);
  } else {
    throw Error(ErrorCode::UnsupportedGeometry,
                "feature " + d.id + ": district geometry must be a Polygon or MultiPolygon", d.id);
  }
  d.area_km2 = polygon_area_km2(d.geometry);
  if (!(d.area_km2 > 0.0)) {
    throw Error(ErrorCode::ZeroAreaGeometry, "feature " + d.id + ": district has zero area", d.id);
  }
  d.centroid = centroid(d.geometry);
  d.bbox = bbox_of(d.geometry);
  return d;
}

bool record_order(const PotentialRecord& a, const PotentialRecord& b) {
  return std::tie(a.category, a.commodity, a.year) < std::tie(b.category, b.commodity, b.year);
}

}  // namespace

std::string_view category_name(PotentialCategory c) noexcept {
  switch (c) {
    case PotentialCategory::Agriculture: return "agriculture";
    case PotentialCategory::Plantation: return "plantation";
    case PotentialCategory::Industry: return "industry";
  }
  return "";
}

std::string_view category_display_id(PotentialCategory c) noexcept {
  switch (c) {
    case PotentialCategory::Agriculture: return "pertanian";
    case PotentialCategory::Plantation: return "perkebunan";
    case PotentialCategory::Industry: return "perindustrian";
  }
  return "";
}

std::string_view category_display_en(PotentialCategory c) noexcept {
  switch (c) {
    case PotentialCategory::Agriculture: return "Agriculture";
    case PotentialCategory::Plantation: return "Plantation";
    case PotentialCategory::Industry: return "Industry";
  }
  return "";
}

std::optional<PotentialCategory> parse_category(std::string_view s) noexcept {
  for (auto c : kAllCategories) {
    if (s == category_name(c) || s == category_display_id(c)) return c;
  }
  return std::nullopt;
}

const District* Catalog::find_district(std::string_view id) const {
  const auto it = districts_.find(id);
  return it == districts_.end() ? nullptr : &it->second;
}

std::vector<std::string> Catalog::districts_at(const Coordinate& p) const {
  return index_.query_point(p, [this](const std::string& id) -> const Areal& { return districts_.find(id)->second.geometry; });
}

Catalog load_catalog(std::string_view geojson, std::string_view records_csv, std::size_t node_capacity) {
  FeatureCollection fc = parse_feature_collection(geojson);
  const std::uint64_t geo_hash = fnv1a(serialize_feature_collection(fc));

  Catalog cat;
  std::vector<IndexEntry> entries;
  entries.reserve(fc.features.size());
  for (auto& feature : fc.features) {
    District d = make_district(std::move(feature));
    entries.push_back({d.id, d.bbox});
    std::string id = d.id;
    cat.districts_.emplace(std::move(id), std::move(d));
  }

  std::set<std::tuple<std::string, PotentialCategory, std::string, int>> keys;
  for (auto& row : parse_records_csv(records_csv)) {
    const PotentialRecord& r = row.record;
    if (!cat.districts_.contains(r.district_id)) {
      throw Error(ErrorCode::UnknownDistrictId,
                  "line " + std::to_string(row.line) + ": unknown district \"" + r.district_id + "\"", std::nullopt,
                  row.line);
    }
    if (!keys.emplace(r.district_id, r.category, r.commodity, r.year).second) {
      throw Error(ErrorCode::DuplicateRecordKey,
                  "line " + std::to_string(row.line) + ": duplicate record for (" + r.district_id + ", " +
                      std::string(category_name(r.category)) + ", " + r.commodity + ", " + std::to_string(r.year) + ")",
                  std::nullopt, row.line);
    }
    cat.records_.push_back(std::move(row.record));
  }

  cat.index_ = SpatialIndex::build(std::move(entries), node_capacity);
  cat.content_hash_ = fnv1a(write_records_csv(cat.records_), geo_hash);
  return cat;
}

DistrictDetail district_detail(const Catalog& c, std::string_view district_id,
                               std::optional<PotentialCategory> category) {
  const District* d = c.find_district(district_id);
  if (d == nullptr) {
    throw Error(ErrorCode::UnknownDistrictId, "unknown district \"" + std::string(district_id) + "\"");
  }
  DistrictDetail detail{*d, {}};
  for (const auto& r : c.records()) {
    if (r.district_id == district_id && (!category || r.category == *category)) detail.records.push_back(r);
  }
  std::sort(detail.records.begin(), detail.records.end(), record_order);
  return detail;
}

std::vector<CommodityTotal> category_totals(const Catalog& c, PotentialCategory category, std::optional<int> year) {
  std::map<std::pair<std::string, std::string>, CommodityTotal> groups;
  for (const auto& r : c.records()) {
    if (r.category != category || (year && r.year != *year)) continue;
    auto& g = groups[{r.commodity, r.unit}];
    g.commodity = r.commodity;
    g.unit = r.unit;
    g.total += r.quantity;
    ++g.record_count;
  }
  std::vector<CommodityTotal> out;
  out.reserve(groups.size());
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

std::vector<std::string> commodities(const Catalog& c, PotentialCategory category) {
  std::set<std::string> names;
  for (const auto& r : c.records()) {
    if (r.category == category) names.insert(r.commodity);
  }
  return {names.begin(), names.end()};
}

std::optional<std::string> dominant_commodity(const Catalog& c, PotentialCategory category) {
  std::map<std::string, double> sums;
  for (const auto& r : c.records()) {
    if (r.category == category) sums[r.commodity] += r.quantity;
  }
  std::optional<std::string> best;
  double best_sum = 0.0;
  for (const auto& [name, sum] : sums) {
    if (!best || sum > best_sum) {
      best = name;
      best_sum = sum;
    }
  }
  return best;
}

std::string_view to_string(ClassificationMethod m) noexcept {
  return m == ClassificationMethod::Quantile ? "quantile" : "equal_interval";
}

Classification classify_values(std::span<const double> values, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "class count k must be at least 2, got " + std::to_string(k));

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Classification out;
  if (sorted.empty()) {
    out.method = ClassificationMethod::EqualInterval;
    out.insufficient_data = true;
    return out;
  }

  const auto n = sorted.size();
  const auto classes = static_cast<std::size_t>(k);
  std::size_t distinct_count = 1;
  for (std::size_t i = 1; i < n; ++i) distinct_count += sorted[i] != sorted[i - 1];

  if (distinct_count >= classes) {
    out.method = ClassificationMethod::Quantile;
    for (std::size_t i = 1; i < classes; ++i) {
      const std::size_t rank = (i * n + classes - 1) / classes;  // ceil(i n / k), 1-based
      out.breaks.push_back(sorted[rank - 1]);
    }
    if (std::adjacent_find(out.breaks.begin(), out.breaks.end(), std::greater_equal<>()) == out.breaks.end()) {
      return out;
    }
    out.breaks.clear();
  }

  out.method = ClassificationMethod::EqualInterval;
  out.insufficient_data = true;
  const double lo = sorted.front();
  const double hi = sorted.back();
  for (std::size_t i = 1; i < classes; ++i) {
    out.breaks.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(classes));
  }
  return out;
}

int class_of(double v, std::span<const double> breaks) noexcept {
  return static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), v) - breaks.begin());
}

ChoroplethResult choropleth(const Catalog& c, PotentialCategory category, std::string_view commodity, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "class count k must be at least 2, got " + std::to_string(k));

  std::map<std::string_view, std::pair<int, double>> latest;  // district -> (year, quantity)
  std::set<std::string> units;
  for (const auto& r : c.records()) {
    if (r.category != category || r.commodity != commodity) continue;
    units.insert(r.unit);
    auto [it, inserted] = latest.try_emplace(r.district_id, r.year, r.quantity);
    if (!inserted && r.year > it->second.first) it->second = {r.year, r.quantity};
  }
  if (latest.empty()) {
    throw Error(ErrorCode::UnknownCommodity, "no " + std::string(category_name(category)) + " records for commodity \"" +
                                                 std::string(commodity) + "\"");
  }

  ChoroplethResult out;
  out.category = category;
  out.commodity = std::string(commodity);
  out.k = k;
  out.units.assign(units.begin(), units.end());

  std::vector<double> values;
  for (const auto& [id, _] : c.districts()) {
    const auto it = latest.find(id);
    const double v = it == latest.end() ? 0.0 : it->second.second;
    out.per_district.push_back({id, v, 0, v == 0.0});
    if (v != 0.0) values.push_back(v);
  }
  out.classification = classify_values(values, k);

  std::set<int> used;
  for (auto& e : out.per_district) {
    if (e.no_data) continue;
    e.class_index = class_of(e.value, out.classification.breaks);
    used.insert(e.class_index);
  }
  out.effective_classes = static_cast<int>(used.size());
  if (out.classification.insufficient_data) {
    out.notice = values.empty() ? "no nonzero values; every district is no_data"
                                : "too few distinct values for strictly ascending quantile breaks; fell back to equal intervals";
  }
  return out;
}

}  // namespace regiongis

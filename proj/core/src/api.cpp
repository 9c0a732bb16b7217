#include "regiongis/api.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include <json.hpp>

#include "regiongis/error.hpp"
#include "regiongis/geojson.hpp"

namespace regiongis {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kJson = "application/json";
constexpr const char* kGeoJson = "application/geo+json";
constexpr const char* kCsv = "text/csv; charset=utf-8";
constexpr int kMaxClasses = 100;

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownCategory:
    case ErrorCode::UnknownCommodity:
    case ErrorCode::UnknownDistrictId:
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::MethodNotAllowed:
      return 405;
    case ErrorCode::BadCoordinate:
    case ErrorCode::BadParameter:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::InvalidArgument:
      return 400;
    default:
      return 500;
  }
}

ApiResponse error_response(ErrorCode code, const std::string& message) {
  ojson body;
  body["error"] = {{"code", std::string(to_string(code))}, {"message", message}};
  return {status_for(code), kJson, body.dump() + "\n", {}};
}

ApiResponse json_response(const ojson& body) { return {200, kJson, body.dump() + "\n", {}}; }

std::optional<std::string> param(const ApiRequest& req, const std::string& name) {
  const auto it = req.params.find(name);
  if (it == req.params.end()) return std::nullopt;
  return it->second;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// --- parameter parsing ------------------------------------------------------

PotentialCategory require_category(std::string_view name) {
  if (auto c = parse_category(name)) return *c;
  throw Error(ErrorCode::UnknownCategory,
              "unknown category \"" + std::string(name) + "\"; valid categories: agriculture, plantation, industry");
}

std::optional<PotentialCategory> optional_category(const ApiRequest& req) {
  const auto raw = param(req, "category");
  if (!raw || raw->empty()) return std::nullopt;
  return require_category(*raw);
}

double parse_coordinate(const ApiRequest& req, const std::string& name, double limit) {
  const auto raw = param(req, name);
  if (!raw || raw->empty()) throw Error(ErrorCode::BadCoordinate, "parameter " + name + " is required");
  double v = 0.0;
  const char* end = raw->data() + raw->size();
  auto [ptr, ec] = std::from_chars(raw->data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw Error(ErrorCode::BadCoordinate, "parameter " + name + " is not a decimal number: \"" + *raw + "\"");
  }
  if (v < -limit || v > limit) {
    throw Error(ErrorCode::BadCoordinate, "parameter " + name + " is outside [-" + format_number(limit) + ", " +
                                              format_number(limit) + "]: " + *raw);
  }
  return v;
}

int parse_k(const ApiRequest& req) {
  const auto raw = param(req, "k");
  if (!raw) return 5;
  int k = 0;
  const char* end = raw->data() + raw->size();
  auto [ptr, ec] = std::from_chars(raw->data(), end, k);
  if (raw->empty() || ec != std::errc{} || ptr != end || k < 2 || k > kMaxClasses) {
    throw Error(ErrorCode::BadParameter,
                "parameter k must be an integer in [2, " + std::to_string(kMaxClasses) + "], got \"" + *raw + "\"");
  }
  return k;
}

// --- JSON builders ----------------------------------------------------------

ojson coordinate_json(const Coordinate& c) { return ojson::array({c.lon, c.lat}); }

ojson record_json(const PotentialRecord& r) {
  return {{"district_id", r.district_id}, {"category", category_name(r.category)}, {"commodity", r.commodity},
          {"quantity", r.quantity},       {"unit", r.unit},                        {"year", r.year}};
}

ojson records_json(const std::vector<PotentialRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr;
}

ojson district_summary(const District& d, std::size_t record_count) {
  return {{"id", d.id},
          {"name", d.name},
          {"area_km2", d.area_km2},
          {"centroid", coordinate_json(d.centroid)},
          {"bbox", ojson::array({d.bbox.min_lon, d.bbox.min_lat, d.bbox.max_lon, d.bbox.max_lat})},
          {"record_count", record_count}};
}

std::size_t record_count(const Catalog& c, std::string_view district_id) {
  return static_cast<std::size_t>(std::count_if(c.records().begin(), c.records().end(),
                                                [&](const PotentialRecord& r) { return r.district_id == district_id; }));
}

ojson choropleth_json(const ChoroplethResult& res) {
  ojson classes = ojson::array();
  for (const auto& e : res.per_district) {
    classes.push_back(
        {{"district_id", e.district_id}, {"value", e.value}, {"class", e.class_index}, {"no_data", e.no_data}});
  }
  return {{"category", category_name(res.category)},
          {"commodity", res.commodity},
          {"k", res.k},
          {"method", to_string(res.classification.method)},
          {"breaks", res.classification.breaks},
          {"insufficient_data", res.classification.insufficient_data},
          {"notice", res.notice.empty() ? ojson(nullptr) : ojson(res.notice)},
          {"effective_classes", res.effective_classes},
          {"units", res.units},
          {"classes", classes}};
}

// --- endpoints --------------------------------------------------------------

ApiResponse layers(const Catalog& c) {
  ojson out = ojson::array();
  for (auto cat : kAllCategories) {
    const auto n = std::count_if(c.records().begin(), c.records().end(),
                                 [&](const PotentialRecord& r) { return r.category == cat; });
    out.push_back({{"category", category_name(cat)},
                   {"display_name_id", category_display_id(cat)},
                   {"display_name_en", category_display_en(cat)},
                   {"record_count", n},
                   {"commodities", commodities(c, cat)}});
  }
  return json_response(out);
}

ApiResponse layer_geojson(const Catalog& c, std::string_view category_text, const ApiRequest& req) {
  const PotentialCategory cat = require_category(category_text);
  const auto names = commodities(c, cat);
  const int k = parse_k(req);

  std::optional<std::string> shown = param(req, "commodity");
  if (shown && shown->empty()) shown.reset();
  if (!shown) shown = dominant_commodity(c, cat);

  std::map<std::string, ChoroplethResult> per_commodity;
  for (const auto& name : names) per_commodity.emplace(name, choropleth(c, cat, name, k));
  if (shown && !per_commodity.contains(*shown)) per_commodity.emplace(*shown, choropleth(c, cat, *shown, k));

  FeatureCollection fc;
  std::size_t row = 0;
  for (const auto& [id, d] : c.districts()) {
    Feature f;
    f.id = id;
    f.geometry = std::visit([](const auto& g) -> Geometry { return g; }, d.geometry);
    f.properties["name"] = d.name;
    f.properties["area_km2"] = d.area_km2;
    f.properties["category"] = std::string(category_name(cat));
    for (const auto& name : names) {
      const auto& e = per_commodity.at(name).per_district[row];
      f.properties["value:" + name] = e.no_data ? PropertyValue(nullptr) : PropertyValue(e.value);
    }
    if (shown) {
      const auto& e = per_commodity.at(*shown).per_district[row];
      f.properties["choropleth_commodity"] = *shown;
      f.properties["choropleth_class"] = e.no_data ? PropertyValue(nullptr) : PropertyValue(double(e.class_index));
      f.properties["no_data"] = e.no_data;
    } else {
      f.properties["choropleth_commodity"] = nullptr;
      f.properties["choropleth_class"] = nullptr;
      f.properties["no_data"] = true;
    }
    fc.features.push_back(std::move(f));
    ++row;
  }
  return {200, kGeoJson, serialize_feature_collection(fc), {}};
}

ApiResponse query(const Catalog& c, const ApiRequest& req) {
  const double lon = parse_coordinate(req, "lon", 180.0);
  const double lat = parse_coordinate(req, "lat", 90.0);
  std::optional<PotentialCategory> cat;
  try {
    cat = optional_category(req);
  } catch (const Error& e) {
    // A bad query parameter, unlike a bad resource path, is a client error.
    ApiResponse res = error_response(e.code(), e.what());
    res.status = 400;
    return res;
  }

  const auto ids = c.districts_at({lon, lat});
  ojson matched = ojson::array();
  for (const auto& id : ids) {
    const auto detail = district_detail(c, id, cat);
    ojson entry = district_summary(detail.district, record_count(c, id));
    entry["records"] = records_json(detail.records);
    matched.push_back(std::move(entry));
  }
  ojson out{{"point", {{"lon", lon}, {"lat", lat}}},
            {"category", cat ? ojson(category_name(*cat)) : ojson(nullptr)},
            {"district_id", ids.empty() ? ojson(nullptr) : ojson(ids.front())},
            {"matched", matched}};
  return json_response(out);
}

ApiResponse districts(const Catalog& c) {
  ojson out = ojson::array();
  for (const auto& [id, d] : c.districts()) out.push_back(district_summary(d, record_count(c, id)));
  return json_response(out);
}

ApiResponse district(const Catalog& c, std::string_view id) {
  const auto detail = district_detail(c, id);
  ojson out = district_summary(detail.district, detail.records.size());
  out["records"] = records_json(detail.records);
  return json_response(out);
}

ApiResponse choropleth_endpoint(const Catalog& c, const ApiRequest& req) {
  const auto raw = param(req, "category");
  if (!raw || raw->empty()) throw Error(ErrorCode::BadParameter, "parameter category is required");
  const PotentialCategory cat = require_category(*raw);
  const int k = parse_k(req);
  auto commodity = param(req, "commodity");
  if (!commodity || commodity->empty()) {
    commodity = dominant_commodity(c, cat);
    if (!commodity) {
      throw Error(ErrorCode::UnknownCommodity, "no " + std::string(category_name(cat)) + " records to classify");
    }
  }
  return json_response(choropleth_json(choropleth(c, cat, *commodity, k)));
}

ApiResponse export_csv(const Catalog& c, const ApiRequest& req) {
  const auto format = param(req, "format").value_or("csv");
  if (format != "csv") {
    throw Error(ErrorCode::UnsupportedFormat, "format \"" + format + "\" is not supported; supported formats: csv");
  }
  const auto cat = optional_category(req);
  auto district_id = param(req, "district_id");
  if (district_id && district_id->empty()) district_id.reset();
  if (district_id && c.find_district(*district_id) == nullptr) {
    throw Error(ErrorCode::UnknownDistrictId, "unknown district \"" + *district_id + "\"");
  }

  std::vector<PotentialRecord> rows;
  for (const auto& r : c.records()) {
    if ((!district_id || r.district_id == *district_id) && (!cat || r.category == *cat)) rows.push_back(r);
  }
  std::string filename = "records";
  if (district_id) filename += "-" + *district_id;
  if (cat) filename += "-" + std::string(category_name(*cat));
  ApiResponse res{200, kCsv, write_records_csv(rows), {}};
  res.headers.emplace_back("Content-Disposition", "attachment; filename=\"" + filename + ".csv\"");
  return res;
}

ApiResponse route(const Catalog& c, const ApiRequest& req) {
  const std::string_view path = req.path;
  if (path == "/api/layers") return layers(c);
  if (path == "/api/query") return query(c, req);
  if (path == "/api/districts") return districts(c);
  if (path == "/api/choropleth") return choropleth_endpoint(c, req);
  if (path == "/api/export") return export_csv(c, req);

  constexpr std::string_view kLayerPrefix = "/api/layers/";
  constexpr std::string_view kGeoJsonSuffix = ".geojson";
  if (path.starts_with(kLayerPrefix) && path.ends_with(kGeoJsonSuffix) &&
      path.size() > kLayerPrefix.size() + kGeoJsonSuffix.size()) {
    return layer_geojson(c, path.substr(kLayerPrefix.size(), path.size() - kLayerPrefix.size() - kGeoJsonSuffix.size()),
                         req);
  }
  constexpr std::string_view kDistrictPrefix = "/api/districts/";
  if (path.starts_with(kDistrictPrefix) && path.size() > kDistrictPrefix.size()) {
    return district(c, path.substr(kDistrictPrefix.size()));
  }
  throw Error(ErrorCode::NotFound, "no such endpoint: " + std::string(path));
}

}  // namespace

std::string ApiResponse::header(const std::string& name) const {
  for (const auto& [k, v] : headers) {
    if (k == name) return v;
  }
  return "";
}

GisApi::GisApi(std::shared_ptr<const Catalog> catalog) : catalog_(std::move(catalog)) {}

std::shared_ptr<const Catalog> GisApi::snapshot() const { return std::atomic_load(&catalog_); }

void GisApi::replace_catalog(std::shared_ptr<const Catalog> catalog) { std::atomic_store(&catalog_, std::move(catalog)); }

ApiResponse GisApi::handle(const ApiRequest& req) const {
  if (req.method != "GET" && req.method != "HEAD") {
    return error_response(ErrorCode::MethodNotAllowed, "the API is read-only; use GET");
  }
  const auto catalog = snapshot();
  ApiResponse res;
  try {
    res = route(*catalog, req);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception&) {
    return error_response(ErrorCode::Io, "internal error");
  }

  if (res.status != 200) return res;

  // Strong validator: catalog content plus the exact resource requested.
  std::string resource = req.path;
  for (const auto& [k, v] : req.params) resource += "&" + k + "=" + v;
  const std::string etag = "\"" + hex64(catalog->content_hash()) + "-" + hex64(fnv1a(resource)) + "\"";
  res.headers.emplace_back("ETag", etag);
  res.headers.emplace_back("Cache-Control", "no-cache");
  if (!req.if_none_match.empty() && req.if_none_match == etag) {
    res.status = 304;
    res.body.clear();
  }
  return res;
}

}  // namespace regiongis

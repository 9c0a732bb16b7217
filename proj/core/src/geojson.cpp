#include "regiongis/geojson.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <unordered_set>

#include <json.hpp>

#include "regiongis/error.hpp"

namespace regiongis {
namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(const std::string& where, const std::string& what,
                            std::optional<std::string> feature_id = std::nullopt) {
  throw Error(ErrorCode::MalformedDocument, where + ": " + what, std::move(feature_id));
}

void reject_foreign_members(const json& obj, std::initializer_list<std::string_view> allowed,
                            const std::string& where, const std::optional<std::string>& feature_id) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) malformed(where, "unexpected member \"" + key + "\"", feature_id);
  }
}

class FeatureReader {
 public:
  FeatureReader(const json& obj, std::size_t index) : obj_(obj), where_("feature " + std::to_string(index)) {}

  Feature read() {
    if (!obj_.is_object()) malformed(where_, "feature must be an object");
    const auto type = obj_.find("type");
    if (type == obj_.end() || *type != "Feature") malformed(where_, "type must be \"Feature\"");

    Feature f;
    f.properties = read_properties();
    f.id = read_id(f.properties);
    where_ = "feature " + f.id;
    id_ = f.id;
    reject_foreign_members(obj_, {"type", "id", "geometry", "properties"}, where_, id_);

    const auto geom = obj_.find("geometry");
    if (geom == obj_.end()) malformed(where_, "missing geometry", id_);
    f.geometry = read_geometry(*geom);
    return f;
  }

 private:
  Properties read_properties() {
    Properties props;
    const auto it = obj_.find("properties");
    if (it == obj_.end() || it->is_null()) return props;
    if (!it->is_object()) malformed(where_, "properties must be an object or null");
    for (const auto& [key, value] : it->items()) {
      if (value.is_null()) {
        props.emplace(key, nullptr);
      } else if (value.is_boolean()) {
        props.emplace(key, value.get<bool>());
      } else if (value.is_number()) {
        props.emplace(key, value.get<double>());
      } else if (value.is_string()) {
        props.emplace(key, value.get<std::string>());
      } else {
        malformed(where_, "property \"" + key + "\" is not a scalar");
      }
    }
    return props;
  }

  std::string read_id(const Properties& props) {
    std::optional<std::string> slot;
    if (const auto it = obj_.find("id"); it != obj_.end()) {
      if (!it->is_string()) malformed(where_, "id must be a string");
      slot = it->get<std::string>();
    }
    std::optional<std::string> prop;
    if (const auto it = props.find("id"); it != props.end()) {
      if (const auto* s = std::get_if<std::string>(&it->second)) {
        prop = *s;
      } else if (!slot) {
        malformed(where_, "id property must be a string");
      }
    }
    if (slot && prop && *slot != *prop) {
      throw Error(ErrorCode::DuplicateFeatureId,
                  where_ + ": id \"" + *slot + "\" disagrees with id property \"" + *prop + "\"", slot);
    }
    std::string id = slot ? *slot : prop.value_or("");
    if (id.empty()) malformed(where_, "missing or empty id");
    return id;
  }

  Coordinate read_position(const json& pos) {
    if (!pos.is_array() || pos.size() != 2 || !pos[0].is_number() || !pos[1].is_number()) {
      malformed(where_, "position must be an array of two numbers [lon, lat]", id_);
    }
    const Coordinate c{pos[0].get<double>(), pos[1].get<double>()};
    if (!std::isfinite(c.lon) || c.lon < -180.0 || c.lon > 180.0) {
      throw Error(ErrorCode::CoordinateOutOfRange,
                  where_ + ": longitude " + format_number(c.lon) + " outside [-180, 180]", id_);
    }
    if (!std::isfinite(c.lat) || c.lat < -90.0 || c.lat > 90.0) {
      throw Error(ErrorCode::CoordinateOutOfRange,
                  where_ + ": latitude " + format_number(c.lat) + " outside [-90, 90]", id_);
    }
    return c;
  }

  LinearRing read_ring(const json& arr, const std::string& label) {
    if (!arr.is_array()) malformed(where_, label + " must be an array of positions", id_);
    LinearRing ring;
    ring.positions.reserve(arr.size());
    for (const auto& pos : arr) ring.positions.push_back(read_position(pos));
    if (auto defect = ring_defect(ring)) {
      throw Error(ErrorCode::InvalidRing, where_ + ": " + label + ": " + *defect, id_);
    }
    return ring;
  }

  Polygon read_polygon(const json& rings, const std::string& prefix) {
    if (!rings.is_array() || rings.empty()) {
      malformed(where_, prefix + "polygon needs at least one ring", id_);
    }
    Polygon poly;
    for (std::size_t r = 0; r < rings.size(); ++r) {
      const std::string label = prefix + "ring " + std::to_string(r) + (r == 0 ? " (exterior)" : " (hole)");
      auto ring = read_ring(rings[r], label);
      if (r == 0) {
        poly.exterior = std::move(ring);
      } else {
        poly.holes.push_back(std::move(ring));
      }
    }
    return normalize_winding(std::move(poly));
  }

  Geometry read_geometry(const json& geom) {
    if (geom.is_null()) throw Error(ErrorCode::UnsupportedGeometry, where_ + ": null geometry", id_);
    if (!geom.is_object()) malformed(where_, "geometry must be an object", id_);
    const auto type = geom.find("type");
    if (type == geom.end() || !type->is_string()) malformed(where_, "geometry type missing", id_);
    const auto name = type->get<std::string>();
    if (name != "Point" && name != "Polygon" && name != "MultiPolygon") {
      throw Error(ErrorCode::UnsupportedGeometry,
                  where_ + ": geometry type \"" + name + "\" is not supported (Point, Polygon, MultiPolygon)", id_);
    }
    reject_foreign_members(geom, {"type", "coordinates"}, where_ + " geometry", id_);
    const auto coords = geom.find("coordinates");
    if (coords == geom.end()) malformed(where_, "geometry coordinates missing", id_);

    if (name == "Point") return read_position(*coords);
    if (name == "Polygon") return read_polygon(*coords, "");

    if (!coords->is_array() || coords->empty()) malformed(where_, "multipolygon needs at least one polygon", id_);
    MultiPolygon multi;
    for (std::size_t p = 0; p < coords->size(); ++p) {
      multi.parts.push_back(read_polygon((*coords)[p], "polygon " + std::to_string(p) + " "));
    }
    return multi;
  }

  const json& obj_;
  std::string where_;
  std::optional<std::string> id_;
};

void write_string(std::string& out, const std::string& s) { out += json(s).dump(); }

void write_position(std::string& out, const Coordinate& c) {
  out += '[';
  out += format_number(c.lon);
  out += ',';
  out += format_number(c.lat);
  out += ']';
}

void write_ring(std::string& out, const LinearRing& ring) {
  out += '[';
  for (std::size_t i = 0; i < ring.positions.size(); ++i) {
    if (i) out += ',';
    write_position(out, ring.positions[i]);
  }
  out += ']';
}

void write_polygon(std::string& out, const Polygon& poly) {
  out += '[';
  write_ring(out, poly.exterior);
  for (const auto& hole : poly.holes) {
    out += ',';
    write_ring(out, hole);
  }
  out += ']';
}

void write_geometry(std::string& out, const Geometry& geom) {
  struct Visitor {
    std::string& out;
    void operator()(const Coordinate& c) const {
      out += R"({"type":"Point","coordinates":)";
      write_position(out, c);
    }
    void operator()(const Polygon& p) const {
      out += R"({"type":"Polygon","coordinates":)";
      write_polygon(out, p);
    }
    void operator()(const MultiPolygon& m) const {
      out += R"({"type":"MultiPolygon","coordinates":[)";
      for (std::size_t i = 0; i < m.parts.size(); ++i) {
        if (i) out += ',';
        write_polygon(out, m.parts[i]);
      }
      out += ']';
    }
  };
  std::visit(Visitor{out}, geom);
  out += '}';
}

void write_property(std::string& out, const PropertyValue& v) {
  struct Visitor {
    std::string& out;
    void operator()(std::nullptr_t) const { out += "null"; }
    void operator()(bool b) const { out += b ? "true" : "false"; }
    void operator()(double d) const { out += format_number(d); }
    void operator()(const std::string& s) const { write_string(out, s); }
  };
  std::visit(Visitor{out}, v);
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[512];
  if (std::abs(v) < 1e15 && v == std::trunc(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

FeatureCollection parse_feature_collection(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("document", "top level must be an object");
  const auto type = doc.find("type");
  if (type == doc.end() || *type != "FeatureCollection") {
    malformed("document", "type must be \"FeatureCollection\"");
  }
  reject_foreign_members(doc, {"type", "features"}, "document", std::nullopt);
  const auto features = doc.find("features");
  if (features == doc.end() || !features->is_array()) malformed("document", "features must be an array");

  FeatureCollection fc;
  fc.features.reserve(features->size());
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < features->size(); ++i) {
    Feature f = FeatureReader((*features)[i], i).read();
    if (!seen.insert(f.id).second) {
      throw Error(ErrorCode::DuplicateFeatureId, "feature id \"" + f.id + "\" appears more than once", f.id);
    }
    fc.features.push_back(std::move(f));
  }
  return fc;
}

std::string serialize_feature_collection(const FeatureCollection& fc) {
  std::string out = R"({"type":"FeatureCollection","features":[)";
  for (std::size_t i = 0; i < fc.features.size(); ++i) {
    const Feature& f = fc.features[i];
    out += i ? ",\n" : "\n";
    out += R"({"type":"Feature","id":)";
    write_string(out, f.id);
    out += R"(,"geometry":)";
    write_geometry(out, f.geometry);
    out += R"(,"properties":{)";
    bool first = true;
    for (const auto& [key, value] : f.properties) {
      if (!first) out += ',';
      first = false;
      write_string(out, key);
      out += ':';
      write_property(out, value);
    }
    out += "}}";
  }
  out += fc.features.empty() ? "]}\n" : "\n]}\n";
  return out;
}

}  // namespace regiongis

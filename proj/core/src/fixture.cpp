#include "regiongis/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "regiongis/error.hpp"

namespace regiongis {
namespace {

// Districts per row, south to north.
constexpr std::array<int, 4> kRowColumns = {5, 5, 4, 5};

struct CommodityPool {
  PotentialCategory category;
  std::array<const char*, 4> names;
  const char* unit;
  double lo, hi;
};

constexpr std::array<CommodityPool, 3> kPools = {{
    {PotentialCategory::Agriculture, {"cassava", "corn", "rice", "soybean"}, "ha", 500.0, 25000.0},
    {PotentialCategory::Plantation, {"coconut", "coffee", "palm oil", "rubber"}, "ton/yr", 100.0, 50000.0},
    {PotentialCategory::Industry, {"brick kiln", "food processing", "furniture", "rice mill"}, "count", 1.0, 120.0},
}};

constexpr int kRecordYear = 2012;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Fixed mapping from engine output so results do not depend on the
  // standard library's distribution implementations.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

double snap(double v) { return std::round(v * 1e6) / 1e6; }

class MapBuilder {
 public:
  explicit MapBuilder(Rng& rng) : rng_(rng) {
    const BBox& e = kFixtureExtent;
    const int rows = static_cast<int>(kRowColumns.size());
    row_height_ = (e.max_lat - e.min_lat) / rows;

    for (int r = 0; r < rows; ++r) {
      std::vector<double> xs{e.min_lon};
      for (int c = 1; c < kRowColumns[r]; ++c) xs.push_back(snap(e.min_lon + c * (e.max_lon - e.min_lon) / kRowColumns[r]));
      xs.push_back(e.max_lon);
      column_x_.push_back(std::move(xs));
    }
    for (int b = 0; b <= rows; ++b) boundaries_.push_back(make_row_boundary(b));
    for (int r = 0; r < rows; ++r) {
      std::vector<Coordinate> mids;
      const double width = (e.max_lon - e.min_lon) / kRowColumns[r];
      const double y_mid = e.min_lat + (r + 0.5) * row_height_;
      for (std::size_t c = 0; c < column_x_[r].size(); ++c) {
        const bool edge = c == 0 || c + 1 == column_x_[r].size();
        const double dx = edge ? 0.0 : rng_.uniform(-0.1, 0.1) * width;
        const double dy = edge ? 0.0 : rng_.uniform(-0.1, 0.1) * row_height_;
        mids.push_back({snap(column_x_[r][c] + dx), snap(y_mid + dy)});
      }
      side_mid_.push_back(std::move(mids));
    }
  }

  Polygon cell(int row, int col) const {
    const double xl = column_x_[row][col];
    const double xr = column_x_[row][col + 1];
    LinearRing ring;
    auto& pts = ring.positions;
    for (const auto& p : boundaries_[row]) {
      if (p.lon >= xl && p.lon <= xr) pts.push_back(p);
    }
    if (col + 1 < kRowColumns[row]) pts.push_back(side_mid_[row][col + 1]);
    const auto& top = boundaries_[row + 1];
    for (auto it = top.rbegin(); it != top.rend(); ++it) {
      if (it->lon >= xl && it->lon <= xr) pts.push_back(*it);
    }
    if (col > 0) pts.push_back(side_mid_[row][col]);
    pts.push_back(pts.front());
    return normalize_winding(Polygon{std::move(ring), {}});
  }

 private:
  // Boundary b separates row b-1 (below) from row b (above). Vertices sit on
  // every column line of both rows; jittered midpoints are inserted between
  // them on interior boundaries only.
  std::vector<Coordinate> make_row_boundary(int b) {
    const BBox& e = kFixtureExtent;
    const int rows = static_cast<int>(kRowColumns.size());
    const double y = b == rows ? e.max_lat : snap(e.min_lat + b * row_height_);
    std::vector<double> xs;
    if (b > 0) xs.insert(xs.end(), column_x_[b - 1].begin(), column_x_[b - 1].end());
    if (b < rows) xs.insert(xs.end(), column_x_[b].begin(), column_x_[b].end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const bool interior = b > 0 && b < rows;
    std::vector<Coordinate> line;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      line.push_back({xs[i], y});
      if (interior && i + 1 < xs.size()) {
        line.push_back({snap((xs[i] + xs[i + 1]) / 2.0), snap(y + rng_.uniform(-0.1, 0.1) * row_height_)});
      }
    }
    return line;
  }

  Rng& rng_;
  double row_height_ = 0.0;
  std::vector<std::vector<double>> column_x_;
  std::vector<std::vector<Coordinate>> boundaries_;
  std::vector<std::vector<Coordinate>> side_mid_;
};

std::string district_id(int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "K%02d", n);
  return buf;
}

}  // namespace

FixtureData generate_fixture(std::uint64_t seed) {
  Rng rng(seed);
  MapBuilder map(rng);
  FixtureData data;

  // Numbered north to south, west to east.
  int n = 0;
  for (int row = static_cast<int>(kRowColumns.size()) - 1; row >= 0; --row) {
    for (int col = 0; col < kRowColumns[row]; ++col) {
      ++n;
      Feature f;
      f.id = district_id(n);
      f.geometry = map.cell(row, col);
      char name[32];
      std::snprintf(name, sizeof name, "Synthetic District %02d", n);
      f.properties["name"] = std::string(name);
      f.properties["synthetic"] = true;
      data.districts.features.push_back(std::move(f));
    }
  }

  for (const auto& f : data.districts.features) {
    for (const auto& pool : kPools) {
      PotentialRecord r;
      r.district_id = f.id;
      r.category = pool.category;
      r.commodity = pool.names[rng.index(pool.names.size())];
      r.unit = pool.unit;
      r.year = kRecordYear;
      const double q = rng.uniform(pool.lo, pool.hi);
      r.quantity = pool.category == PotentialCategory::Industry ? std::round(q) : std::round(q * 10.0) / 10.0;
      data.records.push_back(std::move(r));
    }
  }
  return data;
}

void write_fixture(const FixtureData& data, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  };
  write(dir / kDistrictsFile, serialize_feature_collection(data.districts));
  write(dir / kRecordsFile, write_records_csv(data.records));
}

}  // namespace regiongis

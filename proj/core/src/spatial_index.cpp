#include "regiongis/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regiongis/error.hpp"

namespace regiongis {
namespace {

double center_lon(const BBox& b) { return (b.min_lon + b.max_lon) / 2.0; }
double center_lat(const BBox& b) { return (b.min_lat + b.max_lat) / 2.0; }

// Returns the STR ordering of `boxes` (a permutation of indices) together
// with the sizes of the consecutive runs that become one node each. Ties are
// broken by the incoming index.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> str_pack(const std::vector<BBox>& boxes,
                                                                       std::size_t capacity) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  const std::size_t leaves = (n + capacity - 1) / capacity;
  const auto slices = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(leaves))));
  const std::size_t slice_size = slices * capacity;

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = center_lon(boxes[a]), cb = center_lon(boxes[b]);
    return ca != cb ? ca < cb : a < b;
  });

  std::vector<std::size_t> runs;
  for (std::size_t start = 0; start < n; start += slice_size) {
    const std::size_t end = std::min(n, start + slice_size);
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(end),
              [&](std::size_t a, std::size_t b) {
                const double ca = center_lat(boxes[a]), cb = center_lat(boxes[b]);
                return ca != cb ? ca < cb : a < b;
              });
    for (std::size_t s = start; s < end; s += capacity) runs.push_back(std::min(capacity, end - s));
  }
  return {std::move(order), std::move(runs)};
}

}  // namespace

SpatialIndex SpatialIndex::build(std::vector<IndexEntry> entries, std::size_t node_capacity) {
  if (node_capacity < 2) {
    throw Error(ErrorCode::InvalidArgument, "node capacity must be at least 2, got " + std::to_string(node_capacity));
  }
  std::sort(entries.begin(), entries.end(),
            [](const IndexEntry& a, const IndexEntry& b) { return a.feature_id < b.feature_id; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].feature_id == entries[i - 1].feature_id) {
      throw Error(ErrorCode::DuplicateEntryId, "duplicate index entry \"" + entries[i].feature_id + "\"",
                  entries[i].feature_id);
    }
  }

  SpatialIndex ix;
  ix.node_capacity_ = node_capacity;
  if (entries.empty()) return ix;

  // Leaf level.
  {
    std::vector<BBox> boxes;
    boxes.reserve(entries.size());
    for (const auto& e : entries) boxes.push_back(e.bbox);
    auto [order, runs] = str_pack(boxes, node_capacity);
    ix.entries_.reserve(entries.size());
    for (std::size_t i : order) ix.entries_.push_back(std::move(entries[i]));

    std::uint32_t first = 0;
    for (std::size_t run : runs) {
      Node node{ix.entries_[first].bbox, true, first, static_cast<std::uint32_t>(run)};
      for (std::size_t k = first; k < first + run; ++k) node.bbox = bbox_union(node.bbox, ix.entries_[k].bbox);
      ix.nodes_.push_back(node);
      first += static_cast<std::uint32_t>(run);
    }
    ix.height_ = 1;
  }

  // Inner levels: the previous level is always the tail of nodes_.
  std::size_t level_begin = 0;
  while (ix.nodes_.size() - level_begin > 1) {
    const std::size_t level_end = ix.nodes_.size();
    std::vector<Node> level(ix.nodes_.begin() + static_cast<std::ptrdiff_t>(level_begin), ix.nodes_.end());
    std::vector<BBox> boxes;
    boxes.reserve(level.size());
    for (const auto& n : level) boxes.push_back(n.bbox);
    auto [order, runs] = str_pack(boxes, node_capacity);
    for (std::size_t i = 0; i < order.size(); ++i) ix.nodes_[level_begin + i] = level[order[i]];

    auto first = static_cast<std::uint32_t>(level_begin);
    for (std::size_t run : runs) {
      Node node{ix.nodes_[first].bbox, false, first, static_cast<std::uint32_t>(run)};
      for (std::size_t k = first; k < first + run; ++k) node.bbox = bbox_union(node.bbox, ix.nodes_[k].bbox);
      ix.nodes_.push_back(node);
      first += static_cast<std::uint32_t>(run);
    }
    level_begin = level_end;
    ++ix.height_;
  }
  return ix;
}

template <typename Visit>
void SpatialIndex::visit_candidates(const BBox& window, Visit&& visit) const {
  if (nodes_.empty()) return;
  std::vector<std::size_t> stack{root()};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (!bbox_intersects(node.bbox, window)) continue;
    for (std::size_t k = node.first; k < node.first + node.count; ++k) {
      if (node.leaf) {
        if (bbox_intersects(entries_[k].bbox, window)) visit(entries_[k]);
      } else {
        stack.push_back(k);
      }
    }
  }
}

std::vector<std::string> SpatialIndex::query_bbox(const BBox& window) const {
  std::vector<std::string> ids;
  visit_candidates(window, [&](const IndexEntry& e) { ids.push_back(e.feature_id); });
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> SpatialIndex::query_point(const Coordinate& p, const GeometryResolver& resolve) const {
  std::vector<std::string> ids;
  visit_candidates(bbox_of(p), [&](const IndexEntry& e) {
    if (contains_point(resolve(e.feature_id), p)) ids.push_back(e.feature_id);
  });
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace regiongis

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regiongis/geometry.hpp"

namespace regiongis {

struct IndexEntry {
  std::string feature_id;
  BBox bbox;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Static R-tree packed with Sort-Tile-Recursive bulk loading.
///
/// Nodes live in one flat array with the root last. A leaf node's children
/// are the contiguous range [first, first + count) of entries(); an inner
/// node's children are the same range of nodes(). All leaves sit on the same
/// level. The structure depends only on the entry set: entries are ordered by
/// feature id before packing and every sort breaks ties by that order.
class SpatialIndex {
 public:
  static constexpr std::size_t kDefaultNodeCapacity = 8;

  struct Node {
    BBox bbox;
    bool leaf = true;
    std::uint32_t first = 0;
    std::uint32_t count = 0;

    friend bool operator==(const Node&, const Node&) = default;
  };

  using GeometryResolver = std::function<const Areal&(const std::string& feature_id)>;

  SpatialIndex() = default;

  /// Throws Error(DuplicateEntryId) on repeated ids and
  /// Error(InvalidArgument) when node_capacity < 2. An empty entry list
  /// yields a valid empty index.
  static SpatialIndex build(std::vector<IndexEntry> entries,
                            std::size_t node_capacity = kDefaultNodeCapacity);

  /// Ids of entries whose bbox intersects `window` (closed), sorted.
  std::vector<std::string> query_bbox(const BBox& window) const;

  /// Ids whose bbox contains `p` and whose geometry, obtained through
  /// `resolve`, contains `p`; sorted.
  std::vector<std::string> query_point(const Coordinate& p, const GeometryResolver& resolve) const;

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t node_capacity() const noexcept { return node_capacity_; }
  /// Number of node levels; 0 for an empty index, 1 when the root is a leaf.
  std::size_t height() const noexcept { return height_; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<IndexEntry>& entries() const noexcept { return entries_; }
  std::size_t root() const noexcept { return nodes_.size() - 1; }

  friend bool operator==(const SpatialIndex&, const SpatialIndex&) = default;

 private:
  template <typename Visit>
  void visit_candidates(const BBox& window, Visit&& visit) const;

  std::size_t node_capacity_ = kDefaultNodeCapacity;
  std::size_t height_ = 0;
  std::vector<Node> nodes_;
  std::vector<IndexEntry> entries_;
};

}  // namespace regiongis

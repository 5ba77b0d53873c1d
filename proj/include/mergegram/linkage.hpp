#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergegram/errors.hpp"
#include "mergegram/geometry.hpp"
#include "mergegram/scales.hpp"

namespace mg {

/// Dense symmetric distance matrix with zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::int32_t n);

  /// Validates squareness, symmetry, zero diagonal and finite non-negative
  /// entries; an explicitly supplied matrix (e.g. a shortest-path metric)
  /// passes through unchanged.
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::int32_t size() const { return n_; }
  double at(std::int32_t i, std::int32_t j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  void set(std::int32_t i, std::int32_t j, double value);

 private:
  std::int32_t n_;
  std::vector<double> data_;
};

/// All pairwise distances under the given metric. Throws InvalidMetric when
/// the metric returns a negative or non-finite value.
DistanceMatrix pairwise_distances(const PointCloud& cloud,
                                  const Metric& metric = euclidean_metric());

struct SpanningEdge {
  std::int32_t a;
  std::int32_t b;
  double length;
};

/// Spanning tree over point indices 0..n-1 with exactly n-1 edges.
struct SpanningTree {
  std::int32_t point_count = 0;
  std::vector<SpanningEdge> edges;
};

/// Kruskal over all pairs, O(n^2 log n). Ties broken by (length, min, max)
/// index order; any MST yields the same dendrogram partitions downstream.
SpanningTree build_mst(const DistanceMatrix& distances);

/// Prim on the implicit dense Euclidean graph: O(n^2) time, O(n) memory.
/// Output-equivalent to build_mst(pairwise_distances(cloud)) for every
/// invariant computed from the tree.
SpanningTree build_mst_euclidean(const PointCloud& cloud);

/// Merge-tree node over a contiguous slice [first, last) of the dendrogram's
/// leaf order. Leaves are born at scale 0 and hold one point each unless
/// coincident points collapsed at scale zero. A child dies exactly when its
/// parent is born; the root lives forever.
struct ClusterNode {
  std::int32_t first = 0;
  std::int32_t last = 0;
  Scale birth = 0.0;
  Scale death = kInfinity;
  std::vector<std::int32_t> children;

  bool is_leaf() const { return children.empty(); }
  std::int32_t leaf_span() const { return last - first; }
};

struct Dendrogram {
  std::vector<ClusterNode> nodes;
  std::vector<std::int32_t> leaf_order;  // permutation of point indices
  std::int32_t root = -1;
  std::int32_t point_count = 0;

  /// Sorted point indices belonging to a node.
  std::vector<std::int32_t> members(std::int32_t node) const;
};

/// Single-linkage merge tree from a spanning tree. Edges whose merge scales
/// coincide within the scale tolerance are applied simultaneously and may
/// produce k-way nodes; zero-scale merges (coincident points) collapse into
/// multi-point leaves so every node keeps birth < death.
Dendrogram single_linkage(const SpanningTree& tree,
                          ScaleConvention convention = ScaleConvention::kHalf);

/// Clusters alive at scale s (birth <= s < death) as sorted member lists,
/// ordered by smallest member.
std::vector<std::vector<std::int32_t>> partition_at(const Dendrogram& dendrogram, Scale s);

/// Throws std::logic_error when a structural invariant is broken.
void validate_dendrogram(const Dendrogram& dendrogram);

/// Structure-only encoding: two dendrograms get equal strings iff they are
/// isomorphic as trees with equal node births and leaf spans (leaf labels
/// ignored). Children are serialized in a canonical sorted order.
std::string canonical_form(const Dendrogram& dendrogram);

namespace detail {
/// Assigns leaf_order and [first, last) ranges by traversal from the root;
/// leaf_points[id] lists the points owned by leaf node id.
void finalize_ranges(Dendrogram& dendrogram,
                     const std::vector<std::vector<std::int32_t>>& leaf_points);
}  // namespace detail

}  // namespace mg

#pragma once

#include <cstdint>
#include <vector>

#include "mergegram/errors.hpp"
#include "mergegram/diagram.hpp"
#include "mergegram/geometry.hpp"
#include "mergegram/linkage.hpp"

namespace mg {

/// One pair per merge set: the (birth, death) life of every dendrogram node,
/// the root contributing (last merge scale, infinity).
Mergegram mergegram(const Dendrogram& dendrogram);

/// (0, merge scale) per MST edge plus the everlasting (0, infinity) pair.
/// Zero-length edges (coincident points) contribute nothing.
PersistenceDiagram persistence0d_from_mst(
    const SpanningTree& tree, ScaleConvention convention = ScaleConvention::kHalf);

/// Recovers the persistence diagram from a mergegram alone: at every scale
/// s > 0 the pair (0, s) appears (#deaths at s) - (#births at s) times.
/// Throws NegativeMultiplicity when some scale has more births than deaths.
PersistenceDiagram persistence0d_from_mergegram(const Mergegram& mergegram);

/// Sorted distances to the k nearest neighbours, one row per point. Rows are
/// kept lexicographically sorted so the multiset has one canonical form.
struct NnDistanceSet {
  std::int32_t k = 0;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const NnDistanceSet&, const NnDistanceSet&) = default;
};

/// Throws CloudTooSmall unless the cloud has at least k+1 points.
NnDistanceSet nn_distances(const PointCloud& cloud, std::int32_t k,
                           const Metric& metric = euclidean_metric());

}  // namespace mg

#pragma once

#include "mergegram/errors.hpp"
#include "mergegram/diagram.hpp"
#include "mergegram/geometry.hpp"

namespace mg {

/// max over both clouds of the distance from each point to the other cloud.
double hausdorff(const PointCloud& a, const PointCloud& b,
                 const Metric& metric = euclidean_metric());

/// L-infinity distance between two pairs viewed as points of the extended
/// plane; multiplicities are ignored. Two infinite deaths cancel; exactly one
/// puts the pairs infinitely far apart.
double linf_pair_distance(const DiagramPair& p, const DiagramPair& q);

/// L-infinity distance from a pair to the diagonal {(s, s)}: half its life,
/// infinite for never-dying pairs.
double diagonal_distance(const DiagramPair& p);

/// Exact bottleneck distance between diagrams augmented with the diagonal.
/// Binary search over the candidate set (all cross pair distances and all
/// diagonal distances) with a maximum-bipartite-matching feasibility test at
/// each candidate; no approximation. Diagrams whose infinite-death counts
/// differ are infinitely far apart; otherwise infinite pairs are matched
/// among themselves by sorted birth order, which is optimal in L-infinity.
/// For the diagrams built here this value also equals the interleaving
/// distance of the underlying modules; only the bottleneck side is computed.
double bottleneck(const Diagram& a, const Diagram& b);

}  // namespace mg

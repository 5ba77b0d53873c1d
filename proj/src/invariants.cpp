#include "mergegram/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "mergegram/errors.hpp"

namespace mg {

Mergegram mergegram(const Dendrogram& dendrogram) {
  Mergegram result;
  for (const ClusterNode& node : dendrogram.nodes)
    result.add(DiagramPair(node.birth, node.death));
  return result;
}

PersistenceDiagram persistence0d_from_mst(const SpanningTree& tree,
                                          ScaleConvention convention) {
  PersistenceDiagram result;
  for (const SpanningEdge& e : tree.edges) {
    const Scale s = merge_scale(e.length, convention);
    if (!scale_eq(s, 0.0)) result.add(DiagramPair(0.0, s));
  }
  result.add(DiagramPair(0.0, kInfinity));
  return result;
}

PersistenceDiagram persistence0d_from_mergegram(const Mergegram& mergegram) {
  // Tolerance-bucketed birth/death counts per finite scale.
  struct Bucket {
    double scale;
    std::int64_t births = 0;
    std::int64_t deaths = 0;
  };
  std::vector<Bucket> buckets;
  auto bump = [&buckets](double s, std::int64_t births, std::int64_t deaths) {
    auto pos = std::lower_bound(buckets.begin(), buckets.end(), s,
                                [](const Bucket& b, double v) { return b.scale < v; });
    if (pos != buckets.begin() && scale_eq(std::prev(pos)->scale, s))
      pos = std::prev(pos);
    else if (pos == buckets.end() || !scale_eq(pos->scale, s))
      pos = buckets.insert(pos, Bucket{s});
    pos->births += births;
    pos->deaths += deaths;
  };

  std::int64_t infinite = 0;
  for (const DiagramPair& p : mergegram.pairs()) {
    if (!scale_eq(p.birth, 0.0)) bump(p.birth, p.multiplicity, 0);
    if (p.infinite())
      infinite += p.multiplicity;
    else
      bump(p.death, 0, p.multiplicity);
  }

  PersistenceDiagram result;
  for (const Bucket& b : buckets) {
    const std::int64_t count = b.deaths - b.births;
    if (count < 0)
      throw NegativeMultiplicity("scale " + format_scale(b.scale) +
                                 " has more births than deaths");
    if (count > 0) result.add(DiagramPair(0.0, b.scale, count));
  }
  if (infinite > 0) result.add(DiagramPair(0.0, kInfinity, infinite));
  return result;
}

NnDistanceSet nn_distances(const PointCloud& cloud, std::int32_t k, const Metric& metric) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const std::int32_t n = static_cast<std::int32_t>(cloud.size());
  if (n <= k)
    throw CloudTooSmall("nn_distances with k=" + std::to_string(k) + " needs at least " +
                        std::to_string(k + 1) + " points, got " + std::to_string(n));

  NnDistanceSet result;
  result.k = k;
  result.rows.reserve(n);
  std::vector<double> row;
  for (std::int32_t i = 0; i < n; ++i) {
    row.clear();
    for (std::int32_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = metric(cloud[i], cloud[j]);
      if (!std::isfinite(d) || d < 0.0)
        throw InvalidMetric("distance function returned " + format_scale(d));
      row.push_back(d);
    }
    std::sort(row.begin(), row.end());
    result.rows.emplace_back(row.begin(), row.begin() + k);
  }
  std::sort(result.rows.begin(), result.rows.end());
  return result;
}

}  // namespace mg

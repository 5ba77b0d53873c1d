#include "mergegram/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "mergegram/errors.hpp"

namespace mg {

namespace {

double checked_distance(const Metric& metric, const Point& p, const Point& q) {
  const double d = metric(p, q);
  if (!std::isfinite(d) || d < 0.0)
    throw InvalidMetric("distance function returned " + format_scale(d));
  return d;
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b, const Metric& metric) {
  double worst = 0.0;
  for (const Point& p : a.points()) {
    double nearest = kInfinity;
    for (const Point& q : b.points()) nearest = std::min(nearest, checked_distance(metric, p, q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

double hausdorff(const PointCloud& a, const PointCloud& b, const Metric& metric) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch("hausdorff between clouds of dimension " +
                            std::to_string(a.dimension()) + " and " +
                            std::to_string(b.dimension()));
  return std::max(directed_hausdorff(a, b, metric), directed_hausdorff(b, a, metric));
}

double linf_pair_distance(const DiagramPair& p, const DiagramPair& q) {
  double death_term;
  if (p.infinite() && q.infinite())
    death_term = 0.0;
  else if (p.infinite() || q.infinite())
    return kInfinity;
  else
    death_term = std::abs(p.death - q.death);
  return std::max(std::abs(p.birth - q.birth), death_term);
}

double diagonal_distance(const DiagramPair& p) {
  if (p.infinite()) return kInfinity;
  return (p.death - p.birth) / 2.0;
}

namespace {

constexpr std::int32_t kUnmatched = -1;

/// Hopcroft-Karp maximum matching on an explicit bipartite adjacency.
class HopcroftKarp {
 public:
  HopcroftKarp(std::int32_t left_count, std::int32_t right_count)
      : adj_(left_count), right_count_(right_count) {}

  void add_edge(std::int32_t left, std::int32_t right) { adj_[left].push_back(right); }

  std::int32_t max_matching() {
    const std::int32_t left_count = static_cast<std::int32_t>(adj_.size());
    match_left_.assign(left_count, kUnmatched);
    match_right_.assign(right_count_, kUnmatched);
    level_.assign(left_count, -1);
    std::int32_t matched = 0;
    while (bfs()) {
      for (std::int32_t u = 0; u < left_count; ++u)
        if (match_left_[u] == kUnmatched && dfs(u)) ++matched;
    }
    return matched;
  }

 private:
  bool bfs() {
    std::queue<std::int32_t> queue;
    for (std::int32_t u = 0; u < static_cast<std::int32_t>(adj_.size()); ++u) {
      if (match_left_[u] == kUnmatched) {
        level_[u] = 0;
        queue.push(u);
      } else {
        level_[u] = -1;
      }
    }
    bool found_free_right = false;
    while (!queue.empty()) {
      const std::int32_t u = queue.front();
      queue.pop();
      for (std::int32_t v : adj_[u]) {
        const std::int32_t w = match_right_[v];
        if (w == kUnmatched) {
          found_free_right = true;
        } else if (level_[w] < 0) {
          level_[w] = level_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found_free_right;
  }

  bool dfs(std::int32_t u) {
    for (std::int32_t v : adj_[u]) {
      const std::int32_t w = match_right_[v];
      if (w == kUnmatched || (level_[w] == level_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    level_[u] = -1;
    return false;
  }

  std::vector<std::vector<std::int32_t>> adj_;
  std::int32_t right_count_;
  std::vector<std::int32_t> match_left_;
  std::vector<std::int32_t> match_right_;
  std::vector<std::int32_t> level_;
};

struct FinitePoint {
  double birth;
  double death;
};

double linf_finite(const FinitePoint& p, const FinitePoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

void expand(const Diagram& diagram, std::vector<FinitePoint>& finite,
            std::vector<double>& infinite_births) {
  for (const DiagramPair& p : diagram.pairs()) {
    for (std::int64_t c = 0; c < p.multiplicity; ++c) {
      if (p.infinite())
        infinite_births.push_back(p.birth);
      else
        finite.push_back({p.birth, p.death});
    }
  }
}

/// A delta-matching of the diagonal-augmented diagrams exists iff the points
/// farther than delta from the diagonal on each side can be saturated into
/// the other side through edges of length <= delta (two independent matching
/// problems; a matching covering both sides at once then exists by the
/// Mendelsohn-Dulmage theorem).
bool feasible(double delta, const std::vector<FinitePoint>& a,
              const std::vector<FinitePoint>& b, const std::vector<double>& diag_a,
              const std::vector<double>& diag_b) {
  auto saturates = [delta](const std::vector<FinitePoint>& left,
                           const std::vector<double>& diag_left,
                           const std::vector<FinitePoint>& right) {
    std::vector<std::int32_t> must_match;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(left.size()); ++i)
      if (diag_left[i] > delta) must_match.push_back(i);
    if (must_match.empty()) return true;
    if (must_match.size() > right.size()) return false;
    HopcroftKarp hk(static_cast<std::int32_t>(must_match.size()),
                    static_cast<std::int32_t>(right.size()));
    for (std::int32_t u = 0; u < static_cast<std::int32_t>(must_match.size()); ++u)
      for (std::int32_t v = 0; v < static_cast<std::int32_t>(right.size()); ++v)
        if (linf_finite(left[must_match[u]], right[v]) <= delta) hk.add_edge(u, v);
    return hk.max_matching() == static_cast<std::int32_t>(must_match.size());
  };
  return saturates(a, diag_a, b) && saturates(b, diag_b, a);
}

}  // namespace

double bottleneck(const Diagram& a, const Diagram& b) {
  std::vector<FinitePoint> fa, fb;
  std::vector<double> ia, ib;
  expand(a, fa, ia);
  expand(b, fb, ib);

  if (ia.size() != ib.size()) return kInfinity;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  double delta_infinite = 0.0;
  for (std::size_t t = 0; t < ia.size(); ++t)
    delta_infinite = std::max(delta_infinite, std::abs(ia[t] - ib[t]));

  if (fa.empty() && fb.empty()) return delta_infinite;

  std::vector<double> diag_a(fa.size()), diag_b(fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) diag_a[i] = (fa[i].death - fa[i].birth) / 2.0;
  for (std::size_t j = 0; j < fb.size(); ++j) diag_b[j] = (fb[j].death - fb[j].birth) / 2.0;

  std::vector<double> candidates;
  candidates.reserve(fa.size() * fb.size() + fa.size() + fb.size() + 1);
  candidates.push_back(0.0);
  candidates.insert(candidates.end(), diag_a.begin(), diag_a.end());
  candidates.insert(candidates.end(), diag_b.begin(), diag_b.end());
  for (const FinitePoint& p : fa)
    for (const FinitePoint& q : fb) candidates.push_back(linf_finite(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Smallest feasible candidate; matching everything to the diagonal is
  // always feasible at the largest diagonal distance, which is a candidate.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid], fa, fb, diag_a, diag_b))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(delta_infinite, candidates[lo]);
}

}  // namespace mg

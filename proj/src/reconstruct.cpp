#include "mergegram/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "mergegram/errors.hpp"

namespace mg {

std::optional<double> general_position_violation(const Mergegram& mergegram) {
  std::vector<std::pair<double, std::int64_t>> deaths;  // (scale, multiplicity)
  for (const DiagramPair& p : mergegram.pairs())
    if (!p.infinite()) deaths.emplace_back(p.death, p.multiplicity);
  std::sort(deaths.begin(), deaths.end());

  std::size_t i = 0;
  while (i < deaths.size()) {
    const double scale = deaths[i].first;
    std::int64_t count = 0;
    std::size_t j = i;
    while (j < deaths.size() && scale_eq(deaths[j].first, scale)) {
      count += deaths[j].second;
      ++j;
    }
    if (count != 2) return scale;
    // A death straddling the bucket boundary makes the grouping ambiguous.
    if (j < deaths.size() && scale_eq(deaths[j].first, deaths[j - 1].first)) return scale;
    i = j;
  }
  return std::nullopt;
}

Dendrogram reconstruct_dendrogram(const Mergegram& mergegram) {
  if (const auto bad = general_position_violation(mergegram))
    throw NotGeneralPosition(
        "death scale " + format_scale(*bad) + " is not shared by exactly two pairs", *bad);

  const std::int64_t total = mergegram.total_multiplicity();
  if (total < 1 || total % 2 == 0)
    throw NotGeneralPosition("total multiplicity must be odd (n leaves, n-1 mergers)");
  if (mergegram.infinite_count() != 1)
    throw NotGeneralPosition("expected exactly one infinite-death pair");
  const std::int32_t n = static_cast<std::int32_t>((total + 1) / 2);

  struct Life {
    double birth;
    double death;
  };
  std::vector<Life> events;
  double root_birth = 0.0;
  for (const DiagramPair& p : mergegram.pairs()) {
    if (p.infinite()) {
      root_birth = p.birth;
      continue;
    }
    for (std::int64_t c = 0; c < p.multiplicity; ++c) events.push_back({p.birth, p.death});
  }
  std::sort(events.begin(), events.end(), [](const Life& x, const Life& y) {
    if (x.death != y.death) return x.death < y.death;
    return x.birth < y.birth;
  });

  Dendrogram d;
  d.point_count = n;
  d.nodes.resize(n);  // leaves, labelled 0..n-1 in order of first use
  std::vector<std::vector<std::int32_t>> leaf_points(n);
  for (std::int32_t p = 0; p < n; ++p) leaf_points[p] = {p};
  std::int32_t next_leaf = 0;

  std::vector<std::pair<double, std::int32_t>> open;  // (birth scale, node id), sorted
  auto take_cluster = [&](double birth) -> std::int32_t {
    if (scale_eq(birth, 0.0)) {
      if (next_leaf >= n)
        throw LeafDeficit("birth-0 pairs demand more than " + std::to_string(n) + " leaves");
      return next_leaf++;
    }
    for (auto it = open.begin(); it != open.end(); ++it) {
      if (scale_eq(it->first, birth)) {
        const std::int32_t id = it->second;
        open.erase(it);
        return id;
      }
    }
    throw DanglingBirth("no open cluster born at scale " + format_scale(birth));
  };

  for (std::size_t i = 0; i + 1 < events.size(); i += 2) {
    const double s = events[i].death;
    const std::int32_t c1 = take_cluster(events[i].birth);
    const std::int32_t c2 = take_cluster(events[i + 1].birth);
    const std::int32_t id = static_cast<std::int32_t>(d.nodes.size());
    ClusterNode node;
    node.birth = s;
    node.children = {std::min(c1, c2), std::max(c1, c2)};
    d.nodes[c1].death = s;
    d.nodes[c2].death = s;
    d.nodes.push_back(std::move(node));
    leaf_points.emplace_back();

    auto pos = std::lower_bound(open.begin(), open.end(), s,
                                [](const auto& entry, double v) { return entry.first < v; });
    if ((pos != open.end() && scale_eq(pos->first, s)) ||
        (pos != open.begin() && scale_eq(std::prev(pos)->first, s)))
      throw NotGeneralPosition("two clusters born at scale " + format_scale(s), s);
    open.insert(pos, {s, id});
  }

  std::vector<std::int32_t> remaining;
  for (const auto& [scale, id] : open) remaining.push_back(id);
  for (std::int32_t leaf = next_leaf; leaf < n; ++leaf) remaining.push_back(leaf);
  if (remaining.size() != 1)
    throw NotGeneralPosition("mergegram does not close into a single root");
  d.root = remaining.front();
  if (!scale_eq(d.nodes[d.root].birth, root_birth))
    throw DanglingBirth("infinite pair born at scale " + format_scale(root_birth) +
                        " matches no cluster");

  detail::finalize_ranges(d, leaf_points);
  return d;
}

}  // namespace mg

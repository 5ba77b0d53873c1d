#include "mergegram/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mergegram/errors.hpp"

namespace mg {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::int32_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];  // path halving
      x = parent_[x];
    }
    return x;
  }

  // Returns the new root, or -1 when already joined.
  std::int32_t unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return -1;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return a;
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> rank_;
};

void check_metric_value(double value) {
  if (!std::isfinite(value) || value < 0.0)
    throw InvalidMetric("distance function returned " + format_scale(value));
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::int32_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("distance matrix needs at least one point");
  data_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

void DistanceMatrix::set(std::int32_t i, std::int32_t j, double value) {
  data_[static_cast<std::size_t>(i) * n_ + j] = value;
  data_[static_cast<std::size_t>(j) * n_ + i] = value;
}

DistanceMatrix DistanceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::int32_t n = static_cast<std::int32_t>(rows.size());
  DistanceMatrix m(n);
  for (std::int32_t i = 0; i < n; ++i) {
    if (static_cast<std::int32_t>(rows[i].size()) != n)
      throw std::invalid_argument("distance matrix must be square");
    for (std::int32_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("distances must be finite and non-negative");
      if (rows[j][i] != v) throw std::invalid_argument("distance matrix must be symmetric");
      if (i == j && v != 0.0) throw std::invalid_argument("diagonal must be zero");
      m.data_[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return m;
}

DistanceMatrix pairwise_distances(const PointCloud& cloud, const Metric& metric) {
  const std::int32_t n = static_cast<std::int32_t>(cloud.size());
  DistanceMatrix m(n);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double d = metric(cloud[i], cloud[j]);
      check_metric_value(d);
      m.set(i, j, d);
    }
  }
  return m;
}

SpanningTree build_mst(const DistanceMatrix& distances) {
  const std::int32_t n = distances.size();
  SpanningTree tree{n, {}};
  if (n == 1) return tree;

  std::vector<SpanningEdge> all;
  all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = i + 1; j < n; ++j) all.push_back({i, j, distances.at(i, j)});
  std::sort(all.begin(), all.end(), [](const SpanningEdge& x, const SpanningEdge& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  UnionFind uf(n);
  tree.edges.reserve(n - 1);
  for (const SpanningEdge& e : all) {
    if (uf.unite(e.a, e.b) >= 0) {
      tree.edges.push_back(e);
      if (static_cast<std::int32_t>(tree.edges.size()) == n - 1) break;
    }
  }
  return tree;
}

SpanningTree build_mst_euclidean(const PointCloud& cloud) {
  const std::int32_t n = static_cast<std::int32_t>(cloud.size());
  SpanningTree tree{n, {}};
  if (n == 1) return tree;

  const std::size_t dim = cloud.dimension();
  auto squared = [&](std::int32_t i, std::int32_t j) {
    const double* a = cloud[i].coords.data();
    const double* b = cloud[j].coords.data();
    double sum = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = a[c] - b[c];
      sum += d * d;
    }
    return sum;
  };

  std::vector<double> best(n);
  std::vector<std::int32_t> best_from(n, 0);
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;
  for (std::int32_t j = 1; j < n; ++j) best[j] = squared(0, j);

  tree.edges.reserve(n - 1);
  for (std::int32_t step = 1; step < n; ++step) {
    std::int32_t pick = -1;
    double pick_value = kInfinity;
    for (std::int32_t j = 0; j < n; ++j) {
      if (!in_tree[j] && best[j] < pick_value) {
        pick_value = best[j];
        pick = j;
      }
    }
    in_tree[pick] = 1;
    const std::int32_t from = best_from[pick];
    tree.edges.push_back({std::min(from, pick), std::max(from, pick), std::sqrt(pick_value)});
    for (std::int32_t j = 0; j < n; ++j) {
      if (!in_tree[j]) {
        const double d = squared(pick, j);
        if (d < best[j]) {
          best[j] = d;
          best_from[j] = pick;
        }
      }
    }
  }
  return tree;
}

std::vector<std::int32_t> Dendrogram::members(std::int32_t node) const {
  const ClusterNode& c = nodes[node];
  std::vector<std::int32_t> result(leaf_order.begin() + c.first, leaf_order.begin() + c.last);
  std::sort(result.begin(), result.end());
  return result;
}

namespace detail {

void finalize_ranges(Dendrogram& dendrogram,
                     const std::vector<std::vector<std::int32_t>>& leaf_points) {
  dendrogram.leaf_order.clear();
  dendrogram.leaf_order.reserve(dendrogram.point_count);
  // Iterative depth-first walk; recursion would overflow on chain-shaped trees.
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  stack.emplace_back(dendrogram.root, 0);
  while (!stack.empty()) {
    auto& [id, next_child] = stack.back();
    ClusterNode& node = dendrogram.nodes[id];
    if (node.is_leaf()) {
      node.first = static_cast<std::int32_t>(dendrogram.leaf_order.size());
      for (std::int32_t p : leaf_points[id]) dendrogram.leaf_order.push_back(p);
      node.last = static_cast<std::int32_t>(dendrogram.leaf_order.size());
      stack.pop_back();
      continue;
    }
    if (next_child == 0) node.first = static_cast<std::int32_t>(dendrogram.leaf_order.size());
    if (next_child < node.children.size()) {
      const std::int32_t child = node.children[next_child];
      ++next_child;
      stack.emplace_back(child, 0);
    } else {
      node.last = static_cast<std::int32_t>(dendrogram.leaf_order.size());
      stack.pop_back();
    }
  }
}

}  // namespace detail

Dendrogram single_linkage(const SpanningTree& tree, ScaleConvention convention) {
  const std::int32_t n = tree.point_count;
  if (n < 1) throw std::invalid_argument("spanning tree must cover at least one point");
  if (static_cast<std::int32_t>(tree.edges.size()) != n - 1)
    throw std::invalid_argument("spanning tree must have exactly n-1 edges");

  struct Item {
    double scale;
    std::int32_t a, b;
  };
  std::vector<Item> items;
  items.reserve(tree.edges.size());
  for (const SpanningEdge& e : tree.edges)
    items.push_back({merge_scale(e.length, convention), std::min(e.a, e.b), std::max(e.a, e.b)});
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.scale != y.scale) return x.scale < y.scale;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  Dendrogram d;
  d.point_count = n;
  std::vector<std::vector<std::int32_t>> leaf_points;
  UnionFind uf(n);

  // Coincident points merge at scale zero and collapse into one leaf, keeping
  // birth < death for every node.
  std::size_t i = 0;
  while (i < items.size() && scale_eq(items[i].scale, 0.0)) {
    uf.unite(items[i].a, items[i].b);
    ++i;
  }
  std::vector<std::int32_t> cluster_node(n, -1);  // valid at union-find roots
  for (std::int32_t p = 0; p < n; ++p) {
    const std::int32_t r = uf.find(p);
    if (cluster_node[r] < 0) {
      cluster_node[r] = static_cast<std::int32_t>(d.nodes.size());
      d.nodes.push_back(ClusterNode{});
      leaf_points.emplace_back();
    }
    leaf_points[cluster_node[r]].push_back(p);
  }

  // Remaining edges grouped by tolerance-equal merge scale; each group is
  // applied simultaneously so tied edges produce k-way nodes.
  while (i < items.size()) {
    const double group_scale = items[i].scale;
    std::size_t j = i;
    while (j < items.size() && scale_eq(items[j].scale, group_scale)) ++j;

    std::map<std::int32_t, std::vector<std::int32_t>> component_children;  // root -> node ids
    for (std::size_t e = i; e < j; ++e) {
      const std::int32_t ra = uf.find(items[e].a);
      const std::int32_t rb = uf.find(items[e].b);
      if (ra == rb) continue;  // cannot happen for spanning-tree edges
      std::vector<std::int32_t> kids;
      auto grab = [&](std::int32_t root) {
        auto it = component_children.find(root);
        if (it == component_children.end()) {
          kids.push_back(cluster_node[root]);
        } else {
          kids.insert(kids.end(), it->second.begin(), it->second.end());
          component_children.erase(it);
        }
      };
      grab(ra);
      grab(rb);
      component_children[uf.unite(ra, rb)] = std::move(kids);
    }

    for (auto& [root, kids] : component_children) {
      std::sort(kids.begin(), kids.end());
      const std::int32_t id = static_cast<std::int32_t>(d.nodes.size());
      ClusterNode node;
      node.birth = group_scale;
      node.children = kids;
      for (std::int32_t c : kids) d.nodes[c].death = group_scale;
      d.nodes.push_back(std::move(node));
      leaf_points.emplace_back();
      cluster_node[root] = id;
    }
    i = j;
  }

  d.root = cluster_node[uf.find(0)];
  detail::finalize_ranges(d, leaf_points);
  return d;
}

std::vector<std::vector<std::int32_t>> partition_at(const Dendrogram& dendrogram, Scale s) {
  std::vector<std::vector<std::int32_t>> result;
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(dendrogram.nodes.size()); ++id) {
    const ClusterNode& node = dendrogram.nodes[id];
    if (node.birth <= s && s < node.death) result.push_back(dendrogram.members(id));
  }
  std::sort(result.begin(), result.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return result;
}

void validate_dendrogram(const Dendrogram& d) {
  auto fail = [](const std::string& what) { throw std::logic_error("dendrogram: " + what); };
  const std::int32_t n = d.point_count;
  if (n < 1 || d.nodes.empty()) fail("empty");
  if (d.root < 0 || d.root >= static_cast<std::int32_t>(d.nodes.size())) fail("bad root");
  if (static_cast<std::int32_t>(d.leaf_order.size()) != n) fail("leaf order size");
  {
    std::vector<char> seen(n, 0);
    for (std::int32_t p : d.leaf_order) {
      if (p < 0 || p >= n || seen[p]) fail("leaf order is not a permutation");
      seen[p] = 1;
    }
  }
  std::vector<std::int32_t> parent(d.nodes.size(), -1);
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(d.nodes.size()); ++id) {
    const ClusterNode& node = d.nodes[id];
    if (node.first < 0 || node.last > n || node.first >= node.last) fail("bad leaf range");
    if (!(node.birth < node.death) || scale_eq(node.birth, node.death))
      fail("node must be born before it dies");
    if (node.is_leaf()) {
      if (node.birth != 0.0) fail("leaf born after scale 0");
    } else {
      if (node.children.size() < 2) fail("internal node needs at least two children");
      std::vector<std::pair<std::int32_t, std::int32_t>> ranges;
      for (std::int32_t c : node.children) {
        if (c < 0 || c >= static_cast<std::int32_t>(d.nodes.size()) || c == id)
          fail("bad child id");
        if (parent[c] != -1) fail("child has two parents");
        parent[c] = id;
        const ClusterNode& child = d.nodes[c];
        if (child.death != node.birth) fail("child death must equal parent birth");
        if (!scale_less(child.birth, node.birth)) fail("births must increase towards the root");
        ranges.emplace_back(child.first, child.last);
      }
      // Children must tile the parent's slice of the leaf order exactly.
      std::sort(ranges.begin(), ranges.end());
      std::int32_t cursor = node.first;
      for (const auto& [first, last] : ranges) {
        if (first != cursor) fail("children do not partition the parent");
        cursor = last;
      }
      if (cursor != node.last) fail("children do not partition the parent");
    }
  }
  if (d.nodes[d.root].death != kInfinity) fail("root must live forever");
  if (d.nodes[d.root].leaf_span() != n) fail("root must cover every point");
  for (std::int32_t id = 0; id < static_cast<std::int32_t>(d.nodes.size()); ++id) {
    if (id != d.root) {
      if (parent[id] == -1) fail("unreachable node");
      if (d.nodes[id].death == kInfinity) fail("only the root lives forever");
    }
  }
}

std::string canonical_form(const Dendrogram& d) {
  // Bottom-up encoding; children sorted by their encoded strings.
  std::vector<std::string> encoded(d.nodes.size());
  std::vector<std::pair<std::int32_t, std::size_t>> stack;
  stack.emplace_back(d.root, 0);
  while (!stack.empty()) {
    auto& [id, next_child] = stack.back();
    const ClusterNode& node = d.nodes[id];
    if (node.is_leaf()) {
      encoded[id] = "[" + std::to_string(node.leaf_span()) + "]";
      stack.pop_back();
      continue;
    }
    if (next_child < node.children.size()) {
      const std::int32_t child = node.children[next_child];
      ++next_child;
      stack.emplace_back(child, 0);
      continue;
    }
    std::vector<std::string> parts;
    parts.reserve(node.children.size());
    for (std::int32_t c : node.children) parts.push_back(encoded[c]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(" + format_scale(node.birth);
    for (const std::string& p : parts) s += p;
    s += ")";
    encoded[id] = std::move(s);
    stack.pop_back();
  }
  return encoded[d.root];
}

}  // namespace mg

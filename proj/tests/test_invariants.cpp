#include <doctest.h>

#include <random>

#include "mergegram/errors.hpp"
#include "mergegram/invariants.hpp"
#include "mergegram/metrics.hpp"
#include "mergegram/perturb.hpp"
#include "oracles.hpp"

using namespace mg;
using testutil::line_cloud;

namespace {

Mergegram mergegram_of(const PointCloud& cloud,
                       ScaleConvention convention = ScaleConvention::kHalf) {
  return mergegram(single_linkage(build_mst(pairwise_distances(cloud)), convention));
}

// The worked example on {0,1,3,7,10}.
Diagram five_line_mergegram() {
  return Diagram(std::vector<DiagramPair>{
      DiagramPair(0.0, 0.5, 2), DiagramPair(0.0, 1.0), DiagramPair(0.0, 1.5, 2),
      DiagramPair(0.5, 1.0), DiagramPair(1.0, 2.0), DiagramPair(1.5, 2.0),
      DiagramPair(2.0, kInfinity)});
}

Diagram five_line_pd() {
  return Diagram(std::vector<DiagramPair>{DiagramPair(0.0, 0.5), DiagramPair(0.0, 1.0),
                                          DiagramPair(0.0, 1.5), DiagramPair(0.0, 2.0),
                                          DiagramPair(0.0, kInfinity)});
}

// The three-point dendrogram with mergers at scales 1 and 2, built directly.
Dendrogram three_point_dendrogram() {
  Dendrogram d;
  d.point_count = 3;
  d.nodes.resize(5);
  d.nodes[0] = {0, 1, 0.0, 1.0, {}};
  d.nodes[1] = {1, 2, 0.0, 1.0, {}};
  d.nodes[2] = {2, 3, 0.0, 2.0, {}};
  d.nodes[3] = {0, 2, 1.0, 2.0, {0, 1}};
  d.nodes[4] = {0, 3, 2.0, kInfinity, {3, 2}};
  d.leaf_order = {0, 1, 2};
  d.root = 4;
  return d;
}

}  // namespace

TEST_CASE("mergegram of the five-point line") {
  CHECK(mergegram_of(line_cloud({0, 1, 3, 7, 10})) == five_line_mergegram());
}

TEST_CASE("mergegram of the five-point metric space") {
  const Dendrogram d =
      single_linkage(build_mst(DistanceMatrix::from_rows(testutil::five_point_matrix())));
  const Diagram expected(std::vector<DiagramPair>{
      DiagramPair(0.0, 1.0, 4), DiagramPair(1.0, 2.0, 2), DiagramPair(0.0, 3.0),
      DiagramPair(2.0, 3.0), DiagramPair(3.0, kInfinity)});
  CHECK(mergegram(d) == expected);
}

TEST_CASE("mergegram of a single point") {
  CHECK(mergegram_of(line_cloud({3})) ==
        Diagram(std::vector<DiagramPair>{DiagramPair(0.0, kInfinity)}));
}

TEST_CASE("mergegram of the three-point dendrogram") {
  const Dendrogram d = three_point_dendrogram();
  validate_dendrogram(d);
  const Diagram expected(std::vector<DiagramPair>{DiagramPair(0.0, 1.0, 2),
                                                  DiagramPair(0.0, 2.0), DiagramPair(1.0, 2.0),
                                                  DiagramPair(2.0, kInfinity)});
  CHECK(mergegram(d) == expected);
}

TEST_CASE("persistence diagram from the mst") {
  const SpanningTree tree = build_mst(pairwise_distances(line_cloud({0, 1, 3, 7, 10})));
  CHECK(persistence0d_from_mst(tree) == five_line_pd());

  const SpanningTree single = build_mst(pairwise_distances(line_cloud({9})));
  CHECK(persistence0d_from_mst(single) ==
        Diagram(std::vector<DiagramPair>{DiagramPair(0.0, kInfinity)}));

  const SpanningTree pair = build_mst(pairwise_distances(line_cloud({0, 3})));
  CHECK(persistence0d_from_mst(pair) ==
        Diagram(std::vector<DiagramPair>{DiagramPair(0.0, 1.5), DiagramPair(0.0, kInfinity)}));
}

TEST_CASE("persistence diagram recovered from the mergegram") {
  CHECK(persistence0d_from_mergegram(five_line_mergegram()) == five_line_pd());

  const Diagram lonely(std::vector<DiagramPair>{DiagramPair(0.0, kInfinity)});
  CHECK(persistence0d_from_mergegram(lonely) == lonely);

  // Five-point metric space: counting deaths minus births by hand gives
  // {(0,1) x2, (0,2), (0,3), (0,inf)}; the mst route must agree.
  const DistanceMatrix m = DistanceMatrix::from_rows(testutil::five_point_matrix());
  const Mergegram mg_space = mergegram(single_linkage(build_mst(m)));
  const Diagram expected(std::vector<DiagramPair>{DiagramPair(0.0, 1.0, 2),
                                                  DiagramPair(0.0, 2.0), DiagramPair(0.0, 3.0),
                                                  DiagramPair(0.0, kInfinity)});
  CHECK(persistence0d_from_mergegram(mg_space) == expected);
  CHECK(persistence0d_from_mst(build_mst(m)) == expected);
}

TEST_CASE("corrupted mergegrams are rejected") {
  // Birth at 0.7 with no matching deaths.
  const Diagram corrupt(std::vector<DiagramPair>{DiagramPair(0.7, 1.0), DiagramPair(0.0, 1.0),
                                                 DiagramPair(1.0, kInfinity)});
  CHECK_THROWS_AS(persistence0d_from_mergegram(corrupt), NegativeMultiplicity);
}

TEST_CASE("both persistence routes agree on random clouds") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 100);
    const PointCloud cloud = testutil::random_cloud(rng, n, 1 + trial % 3);
    const SpanningTree tree = build_mst(pairwise_distances(cloud));
    const auto convention = trial % 2 ? ScaleConvention::kFull : ScaleConvention::kHalf;
    const PersistenceDiagram via_mergegram =
        persistence0d_from_mergegram(mergegram(single_linkage(tree, convention)));
    const PersistenceDiagram via_mst = persistence0d_from_mst(tree, convention);
    CHECK(approx_equal(via_mergegram, via_mst));
  }
}

TEST_CASE("general-position clouds have 2n-1 mergegram entries") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const PointCloud cloud = testutil::random_general_position_cloud(rng, n, 2);
    CHECK(mergegram_of(cloud).total_multiplicity() == 2 * n - 1);
  }
}

TEST_CASE("equal persistence diagrams, different mergegrams") {
  const PointCloud a = line_cloud({0, 1, 3, 7, 10});
  const PointCloud b = line_cloud({0, 4, 6, 9, 10});
  const SpanningTree ta = build_mst(pairwise_distances(a));
  const SpanningTree tb = build_mst(pairwise_distances(b));
  CHECK(persistence0d_from_mst(ta) == persistence0d_from_mst(tb));

  const Mergegram mg_a = mergegram_of(a);
  const Mergegram mg_b = mergegram_of(b);
  CHECK_FALSE(mg_a == mg_b);
  const double separation = bottleneck(mg_a, mg_b);
  CHECK(separation > 1e-6);
  CHECK(separation ==
        doctest::Approx(testutil::brute_force_bottleneck(mg_a, mg_b)).epsilon(1e-12));
}

TEST_CASE("mergegram is an isometry invariant") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 30);
    const PointCloud cloud = testutil::random_cloud(rng, n, 2 + trial % 2);
    const PointCloud moved = random_isometry(cloud, rng(), trial % 2 == 0);
    CHECK(bottleneck(mergegram_of(cloud), mergegram_of(moved)) <= 1e-6);
  }
}

TEST_CASE("nearest-neighbour distance rows") {
  const NnDistanceSet nn = nn_distances(line_cloud({0, 1, 3}), 2);
  CHECK(nn.k == 2);
  CHECK(nn.rows == std::vector<std::vector<double>>{{1, 2}, {1, 3}, {2, 3}});

  // Equilateral triangle of side 1.
  const PointCloud triangle = testutil::planar_cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3) / 2}});
  const NnDistanceSet tri = nn_distances(triangle, 2);
  for (const auto& row : tri.rows) {
    CHECK(row[0] == doctest::Approx(1.0));
    CHECK(row[1] == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(nn_distances(line_cloud({0, 1}), 2), CloudTooSmall);
  CHECK_THROWS_AS(nn_distances(line_cloud({0, 1, 2}), 0), std::invalid_argument);
}

TEST_CASE("nearest-neighbour rows match a full sort") {
  std::mt19937_64 rng(99);
  const int k = 4;
  const PointCloud cloud = testutil::random_cloud(rng, 10, 2);
  const NnDistanceSet nn = nn_distances(cloud, k);
  REQUIRE(nn.rows.size() == 10);

  std::vector<std::vector<double>> expected;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < cloud.size(); ++j)
      if (j != i) row.push_back(euclidean(cloud[i], cloud[j]));
    std::sort(row.begin(), row.end());
    row.resize(k);
    expected.push_back(row);
  }
  std::sort(expected.begin(), expected.end());
  CHECK(nn.rows == expected);
  for (const auto& row : nn.rows) CHECK(std::is_sorted(row.begin(), row.end()));
}

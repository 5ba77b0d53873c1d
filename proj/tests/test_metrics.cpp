#include <doctest.h>

#include <random>

#include "mergegram/errors.hpp"
#include "mergegram/invariants.hpp"
#include "mergegram/metrics.hpp"
#include "mergegram/perturb.hpp"
#include "oracles.hpp"

using namespace mg;
using testutil::line_cloud;

TEST_CASE("hausdorff distance basics") {
  const PointCloud a = line_cloud({0, 10});
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(line_cloud({0}), line_cloud({3})) == 3.0);
  CHECK(hausdorff(line_cloud({0, 10}), line_cloud({0, 4, 10})) == 4.0);
  CHECK_THROWS_AS(hausdorff(line_cloud({0}), testutil::planar_cloud({{0, 0}})),
                  DimensionMismatch);
}

TEST_CASE("hausdorff matches brute force over point-to-set distances") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud a = testutil::random_cloud(rng, 1 + static_cast<int>(rng() % 20), 2);
    const PointCloud b = testutil::random_cloud(rng, 1 + static_cast<int>(rng() % 20), 2);
    double expected = 0.0;
    for (const Point& p : a.points()) {
      double nearest = kInfinity;
      for (const Point& q : b.points()) nearest = std::min(nearest, euclidean(p, q));
      expected = std::max(expected, nearest);
    }
    for (const Point& q : b.points()) {
      double nearest = kInfinity;
      for (const Point& p : a.points()) nearest = std::min(nearest, euclidean(p, q));
      expected = std::max(expected, nearest);
    }
    CHECK(hausdorff(a, b) == expected);
  }
}

TEST_CASE("pair distances") {
  CHECK(linf_pair_distance(DiagramPair(0, 1), DiagramPair(0, 1)) == 0.0);
  CHECK(linf_pair_distance(DiagramPair(0, 1), DiagramPair(0.2, 1.5)) == 0.5);
  CHECK(linf_pair_distance(DiagramPair(1, kInfinity), DiagramPair(3, kInfinity)) == 2.0);
  CHECK(linf_pair_distance(DiagramPair(0, 1), DiagramPair(0, kInfinity)) == kInfinity);

  CHECK(diagonal_distance(DiagramPair(0, 1)) == 0.5);
  CHECK(diagonal_distance(DiagramPair(2, 2 + 1e-6)) == doctest::Approx(5e-7));
  CHECK(diagonal_distance(DiagramPair(2, kInfinity)) == kInfinity);
}

TEST_CASE("bottleneck basics") {
  const Diagram d(std::vector<DiagramPair>{DiagramPair(0, 1), DiagramPair(0.5, 3),
                                           DiagramPair(2, kInfinity)});
  CHECK(bottleneck(d, d) == 0.0);
  CHECK(bottleneck(Diagram(std::vector<DiagramPair>{DiagramPair(0, 1)}), Diagram()) == 0.5);
  CHECK(bottleneck(Diagram(), Diagram()) == 0.0);

  // Mismatched infinite counts are infinitely far apart.
  const Diagram immortal(std::vector<DiagramPair>{DiagramPair(0, kInfinity)});
  CHECK(bottleneck(immortal, Diagram()) == kInfinity);

  // Infinite pairs match by sorted births.
  const Diagram ia(std::vector<DiagramPair>{DiagramPair(0, kInfinity), DiagramPair(5, kInfinity)});
  const Diagram ib(std::vector<DiagramPair>{DiagramPair(1, kInfinity), DiagramPair(5.5, kInfinity)});
  CHECK(bottleneck(ia, ib) == 1.0);
}

TEST_CASE("bottleneck equals brute force on small diagrams") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    const int infinite = trial % 4 == 0 ? 1 : 0;
    const Diagram a = testutil::random_diagram(rng, 6, infinite);
    const Diagram b = testutil::random_diagram(rng, 6, trial % 8 == 0 ? infinite + 1 : infinite);
    const double mine = bottleneck(a, b);
    const double brute = testutil::brute_force_bottleneck(a, b);
    if (std::isinf(brute))
      CHECK(std::isinf(mine));
    else
      CHECK(mine == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("bottleneck is a metric on random diagrams") {
  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 20; ++trial) {
    const Diagram a = testutil::random_diagram(rng, 10, 1);
    const Diagram b = testutil::random_diagram(rng, 10, 1);
    const Diagram c = testutil::random_diagram(rng, 10, 1);
    const double ab = bottleneck(a, b);
    const double ba = bottleneck(b, a);
    const double ac = bottleneck(a, c);
    const double cb = bottleneck(c, b);
    CHECK(ab == ba);
    CHECK(bottleneck(a, a) == 0.0);
    CHECK(ab <= ac + cb + 1e-9);
  }
}

TEST_CASE("stability under jitter") {
  std::mt19937_64 rng(99991);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const PointCloud cloud = testutil::random_cloud(rng, n, 2 + trial % 2);
    const double epsilon = 0.01 + 0.5 * (trial % 5) / 5.0;
    const PointCloud moved = jitter(cloud, epsilon, rng());

    const double hd = hausdorff(cloud, moved);
    CHECK(hd <= epsilon + 1e-12);

    const SpanningTree ta = build_mst(pairwise_distances(cloud));
    const SpanningTree tb = build_mst(pairwise_distances(moved));
    const double bd_mg = bottleneck(mergegram(single_linkage(ta)), mergegram(single_linkage(tb)));
    const double bd_pd = bottleneck(persistence0d_from_mst(ta), persistence0d_from_mst(tb));
    CHECK(bd_mg <= hd + 1e-9);
    CHECK(bd_pd <= hd + 1e-9);
  }
}

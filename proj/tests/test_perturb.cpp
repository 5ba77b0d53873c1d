#include <doctest.h>

#include <cmath>
#include <random>

#include "mergegram/errors.hpp"
#include "mergegram/metrics.hpp"
#include "mergegram/perturb.hpp"
#include "oracles.hpp"

using namespace mg;
using testutil::planar_cloud;

namespace {

constexpr double kTau = 6.283185307179586;

bool clouds_close(const PointCloud& a, const PointCloud& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (euclidean(a[i], b[i]) > tol) return false;
  return true;
}

PointCloud unit_square() { return planar_cloud({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

}  // namespace

TEST_CASE("rotation about the bounding-box center") {
  const PointCloud square = unit_square();
  CHECK(rotate_cloud(square, 0.0) == square);
  CHECK(clouds_close(rotate_cloud(square, kTau), square, 1e-9));

  // A quarter turn permutes the square's corners.
  const PointCloud turned = rotate_cloud(square, kTau / 4);
  for (const Point& p : square.points()) {
    double nearest = kInfinity;
    for (const Point& q : turned.points()) nearest = std::min(nearest, euclidean(p, q));
    CHECK(nearest <= 1e-9);
  }
  CHECK_THROWS_AS(rotate_cloud(testutil::line_cloud({0, 1}), 1.0), DimensionMismatch);
}

TEST_CASE("affine distortion") {
  const PointCloud square = unit_square();
  CHECK(affine_distort(square, 0.0, NoiseKind::kUniform, 7) == square);
  CHECK(clouds_close(affine_distort(square, 0.0, NoiseKind::kGaussian, 7), square, 1e-9));

  CHECK(affine_distort(square, 0.1, NoiseKind::kUniform, 42) ==
        affine_distort(square, 0.1, NoiseKind::kUniform, 42));
  CHECK_FALSE(affine_distort(square, 0.1, NoiseKind::kUniform, 42) ==
              affine_distort(square, 0.1, NoiseKind::kUniform, 43));

  CHECK_THROWS_AS(affine_distort(testutil::line_cloud({0, 1}), 0.1, NoiseKind::kUniform, 1),
                  DimensionMismatch);
  CHECK_THROWS_AS(affine_distort(planar_cloud({{0, 0}, {0, 1}}), 0.1, NoiseKind::kUniform, 1),
                  DegenerateBoundingBox);
}

TEST_CASE("affine scale factors follow the stated uniform law") {
  // Unit square: w = h = 1, delta = 0.1, so factors live in [0.9, 1.1]. The
  // right corner (1, *) lands at exactly the factor a.
  const PointCloud square = unit_square();
  std::vector<double> samples;
  for (int i = 0; i < 10000; ++i) {
    const PointCloud distorted = affine_distort(square, 0.1, NoiseKind::kUniform, 1000 + i);
    samples.push_back(distorted[1][0]);
    CHECK(distorted[1][0] >= 0.9);
    CHECK(distorted[1][0] <= 1.1);
  }
  // Kolmogorov-Smirnov against U[0.9, 1.1] at roughly the 1% level.
  CHECK(testutil::ks_statistic_uniform(samples, 0.9, 1.1) < 1.63 / std::sqrt(10000.0));
}

TEST_CASE("gaussian affine factors stay positive") {
  const PointCloud square = unit_square();
  for (int i = 0; i < 200; ++i) {
    const PointCloud distorted = affine_distort(square, 2.0, NoiseKind::kGaussian, i);
    CHECK(distorted[1][0] > 0.0);
    CHECK(distorted[2][1] > 0.0);
  }
}

TEST_CASE("projective corner sampling") {
  const auto exact = sample_projective_corners(3.0, 2.0, 0.0, NoiseKind::kUniform, 5);
  CHECK(exact[0] == Point{{0, 0}});
  CHECK(exact[1] == Point{{0, 2}});
  CHECK(exact[2] == Point{{3, 0}});
  CHECK(exact[3] == Point{{3, 2}});
  const auto gauss = sample_projective_corners(3.0, 2.0, 0.0, NoiseKind::kGaussian, 5);
  for (int i = 0; i < 4; ++i) CHECK(euclidean(gauss[i], exact[i]) <= 1e-9);

  // delta 0.25 on a 100x100 box keeps the first corner inside [0,25]^2.
  for (int i = 0; i < 500; ++i) {
    const auto corners = sample_projective_corners(100, 100, 0.25, NoiseKind::kUniform, i);
    CHECK(corners[0][0] >= 0.0);
    CHECK(corners[0][0] <= 25.0);
    CHECK(corners[0][1] >= 0.0);
    CHECK(corners[0][1] <= 25.0);
    CHECK(corners[3][0] >= 75.0);
    CHECK(corners[3][1] >= 75.0);
  }

  for (int i = 0; i < 200; ++i) {
    const auto corners = sample_projective_corners(10, 10, 3.0, NoiseKind::kGaussian, i);
    for (const Point& c : corners) {
      CHECK(c[0] >= 0.0);
      CHECK(c[0] <= 10.0);
      CHECK(c[1] >= 0.0);
      CHECK(c[1] <= 10.0);
    }
  }

  CHECK_THROWS_AS(sample_projective_corners(1, 1, 0.6, NoiseKind::kUniform, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_projective_corners(0, 1, 0.1, NoiseKind::kUniform, 1),
                  std::invalid_argument);
}

TEST_CASE("homography solving") {
  const std::array<Point, 4> square = {Point{{0, 0}}, Point{{0, 1}}, Point{{1, 0}},
                                       Point{{1, 1}}};
  const Homography identity = solve_homography(square, square);
  for (int i = 0; i < 9; ++i)
    CHECK(identity.m[i] == doctest::Approx(i % 4 == 0 ? 1.0 : 0.0).epsilon(1e-12));

  std::array<Point, 4> doubled = square;
  for (Point& p : doubled) {
    p.coords[0] *= 2;
    p.coords[1] *= 2;
  }
  const Homography scaling = solve_homography(square, doubled);
  CHECK(scaling.m[0] == doctest::Approx(2.0));
  CHECK(scaling.m[4] == doctest::Approx(2.0));
  CHECK(scaling.m[8] == 1.0);
  CHECK(scaling.m[1] == doctest::Approx(0.0));
  CHECK(scaling.m[6] == doctest::Approx(0.0));

  // Collinear source points cannot define a homography.
  const std::array<Point, 4> flat = {Point{{0, 0}}, Point{{1, 1}}, Point{{2, 2}},
                                     Point{{0, 1}}};
  CHECK_THROWS_AS(solve_homography(flat, square), SingularSystem);
}

TEST_CASE("homography maps random quads within 1e-9") {
  for (int trial = 0; trial < 200; ++trial) {
    const auto src = sample_projective_corners(100, 100, 0.25, NoiseKind::kUniform, 2 * trial);
    const auto dst =
        sample_projective_corners(100, 100, 0.25, NoiseKind::kUniform, 2 * trial + 1);
    const Homography h = solve_homography(src, dst);
    for (int i = 0; i < 4; ++i) {
      const Point mapped = h.apply(src[i]);
      CHECK(std::abs(mapped[0] - dst[i][0]) < 1e-9);
      CHECK(std::abs(mapped[1] - dst[i][1]) < 1e-9);
    }
  }
}

TEST_CASE("projective distortion") {
  const PointCloud square = unit_square();
  CHECK(clouds_close(projective_distort(square, 0.0, NoiseKind::kUniform, 3), square, 1e-9));
  CHECK(projective_distort(square, 0.2, NoiseKind::kGaussian, 11) ==
        projective_distort(square, 0.2, NoiseKind::kGaussian, 11));

  // Bounding-box corners land exactly on the sampled targets.
  const PointCloud shifted = planar_cloud({{2, 3}, {6, 3}, {2, 8}, {6, 8}, {4, 5}});
  const auto targets = sample_projective_corners(4.0, 5.0, 0.2, NoiseKind::kUniform, 77);
  const PointCloud distorted = projective_distort(shifted, 0.2, NoiseKind::kUniform, 77);
  const std::array<int, 4> corner_index = {0, 2, 1, 3};  // (0,0), (0,h), (w,0), (w,h)
  for (int c = 0; c < 4; ++c) {
    const Point expected{{targets[c][0] + 2.0, targets[c][1] + 3.0}};
    CHECK(euclidean(distorted[corner_index[c]], expected) <= 1e-9);
  }
}

TEST_CASE("jitter respects its displacement bound") {
  std::mt19937_64 rng(606);
  const PointCloud cloud = testutil::random_cloud(rng, 30, 3);
  CHECK(jitter(cloud, 0.0, 9) == cloud);
  CHECK(jitter(cloud, 0.3, 9) == jitter(cloud, 0.3, 9));
  CHECK_FALSE(jitter(cloud, 0.3, 9) == jitter(cloud, 0.3, 10));

  for (int trial = 0; trial < 20; ++trial) {
    const double epsilon = 0.05 * (trial + 1);
    const PointCloud moved = jitter(cloud, epsilon, trial);
    for (std::size_t i = 0; i < cloud.size(); ++i)
      CHECK(euclidean(cloud[i], moved[i]) <= epsilon);
    CHECK(hausdorff(cloud, moved) <= epsilon);
  }
}

TEST_CASE("isometries preserve pairwise distances") {
  std::mt19937_64 rng(607);
  const PointCloud identity_check = testutil::random_cloud(rng, 10, 2);
  const std::vector<double> eye = {1, 0, 0, 1};
  CHECK(apply_isometry(identity_check, eye, {0, 0}) == identity_check);

  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 2;
    const PointCloud cloud = testutil::random_cloud(rng, 15, dim);
    const PointCloud moved = random_isometry(cloud, trial, trial % 2 == 0);
    REQUIRE(moved.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
      for (std::size_t j = i + 1; j < cloud.size(); ++j)
        CHECK(euclidean(moved[i], moved[j]) ==
              doctest::Approx(euclidean(cloud[i], cloud[j])).epsilon(1e-9));
  }
}

TEST_CASE("reflections flip triangle orientation") {
  const PointCloud triangle = planar_cloud({{0, 0}, {4, 0}, {0, 3}});
  auto orientation = [](const PointCloud& c) {
    const double ux = c[1][0] - c[0][0], uy = c[1][1] - c[0][1];
    const double vx = c[2][0] - c[0][0], vy = c[2][1] - c[0][1];
    return ux * vy - uy * vx;
  };
  bool saw_flip = false, saw_keep = false;
  for (int seed = 0; seed < 40; ++seed) {
    const PointCloud moved = random_isometry(triangle, seed, true);
    (orientation(moved) * orientation(triangle) < 0 ? saw_flip : saw_keep) = true;
    const PointCloud rigid = random_isometry(triangle, seed, false);
    CHECK(orientation(rigid) * orientation(triangle) > 0);
  }
  CHECK(saw_flip);
  CHECK(saw_keep);
}

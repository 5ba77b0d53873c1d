#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mergegram/errors.hpp"
#include "mergegram/geometry.hpp"

namespace mg {

enum class NoiseKind { kUniform, kGaussian };

/// Plane projective map with the bottom-right entry fixed to 1.
struct Homography {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major 3x3

  Point apply(const Point& p) const;  // includes perspective division
  double determinant() const;
};

/// Rotates a 2-d cloud about its bounding-box center. angle is in radians.
PointCloud rotate_cloud(const PointCloud& cloud, double angle);

/// Scales a 2-d cloud about its bounding-box min corner by random horizontal
/// and vertical factors (a, b). With bounding-box extents w, h and noise
/// level delta: uniform noise draws a in [1-delta*w, 1+delta*w] and b in
/// [1-delta*h, 1+delta*h]; gaussian noise draws a from N(1, delta*h) and b
/// from N(1, delta*w), both truncated to positive values (note the crossed
/// pairing of factor and extent in the gaussian case).
PointCloud affine_distort(const PointCloud& cloud, double delta, NoiseKind kind,
                          std::uint64_t seed);

/// Random targets for the four corners (0,0), (0,h), (w,0), (w,h) of a w-by-h
/// rectangle, in that order. Uniform noise samples each target in its
/// delta-sized corner box; gaussian noise samples each coordinate from a
/// normal centered at the corner, truncated to the rectangle. Resamples up to
/// 100 times when three targets fall collinear, then throws DegenerateQuad.
std::array<Point, 4> sample_projective_corners(double w, double h, double delta,
                                               NoiseKind kind, std::uint64_t seed);

/// Homography mapping four source points to four destination points: solves
/// the 8x8 linear system for the matrix entries by elimination with partial
/// pivoting. Throws SingularSystem when either quad is degenerate.
Homography solve_homography(const std::array<Point, 4>& src,
                            const std::array<Point, 4>& dst);

/// Applies a random projective distortion to a 2-d cloud: samples corner
/// targets for the bounding box and maps every point through the induced
/// homography.
PointCloud projective_distort(const PointCloud& cloud, double delta, NoiseKind kind,
                              std::uint64_t seed);

/// Displaces every point by an independent vector drawn uniformly from the
/// L2 ball of radius epsilon, so the Hausdorff distance to the input is at
/// most epsilon by construction. Works in any dimension.
PointCloud jitter(const PointCloud& cloud, double epsilon, std::uint64_t seed);

/// p -> Q p + t for a row-major m-by-m matrix Q and translation t. Q is not
/// checked for orthogonality; random_isometry always passes one.
PointCloud apply_isometry(const PointCloud& cloud, const std::vector<double>& transform,
                          const std::vector<double>& translation);

/// Random orthogonal map plus translation, preserving all pairwise distances
/// within floating-point error. With allow_reflection the orientation flips
/// with probability one half; otherwise the map is a pure rotation.
PointCloud random_isometry(const PointCloud& cloud, std::uint64_t seed,
                           bool allow_reflection);

}  // namespace mg

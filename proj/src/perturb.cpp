#include "mergegram/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mergegram/errors.hpp"
#include "mergegram/rng.hpp"
#include "mergegram/scales.hpp"

namespace mg {

namespace {

void require_2d(const PointCloud& cloud, const char* op) {
  if (cloud.dimension() != 2)
    throw DimensionMismatch(std::string(op) + " requires a 2-d cloud, got dimension " +
                            std::to_string(cloud.dimension()));
}

struct Box2 {
  double ox, oy, w, h;
};

Box2 positive_box(const PointCloud& cloud, const char* op) {
  const BoundingBox box = bounding_box(cloud);
  const Box2 b{box.min[0], box.min[1], box.extent(0), box.extent(1)};
  if (b.w <= 0.0 || b.h <= 0.0)
    throw DegenerateBoundingBox(std::string(op) + " needs a bounding box with positive extents");
  return b;
}

double positive_normal(SplitMix64& rng, double mean, double sigma) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double v = rng.normal(mean, sigma);
    if (v > 0.0) return v;
  }
  return std::numeric_limits<double>::min();
}

double truncated_normal(SplitMix64& rng, double mean, double sigma, double lo, double hi) {
  double v = mean;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    v = rng.normal(mean, sigma);
    if (lo <= v && v <= hi) return v;
  }
  return std::clamp(v, lo, hi);
}

bool collinear(const Point& p, const Point& q, const Point& r) {
  const double ux = q[0] - p[0], uy = q[1] - p[1];
  const double vx = r[0] - p[0], vy = r[1] - p[1];
  const double cross = ux * vy - uy * vx;
  const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
  return std::abs(cross) <= kAbsoluteTolerance + kRelativeTolerance * scale;
}

bool degenerate_quad(const std::array<Point, 4>& quad) {
  for (int skip = 0; skip < 4; ++skip) {
    const Point* triple[3];
    int t = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) triple[t++] = &quad[i];
    if (collinear(*triple[0], *triple[1], *triple[2])) return true;
  }
  return false;
}

}  // namespace

Point Homography::apply(const Point& p) const {
  const double x = p[0], y = p[1];
  const double w = m[6] * x + m[7] * y + m[8];
  if (std::abs(w) < 1e-300) throw SingularSystem("point maps to infinity under homography");
  return Point{{(m[0] * x + m[1] * y + m[2]) / w, (m[3] * x + m[4] * y + m[5]) / w}};
}

double Homography::determinant() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

PointCloud rotate_cloud(const PointCloud& cloud, double angle) {
  require_2d(cloud, "rotate_cloud");
  const Point center = bounding_box(cloud).center();
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Point> points;
  points.reserve(cloud.size());
  for (const Point& p : cloud.points()) {
    const double dx = p[0] - center[0], dy = p[1] - center[1];
    // Written as p plus a correction so a zero angle is exactly the identity.
    points.push_back(Point{{p[0] + (c - 1.0) * dx - s * dy, p[1] + s * dx + (c - 1.0) * dy}});
  }
  return PointCloud(std::move(points));
}

PointCloud affine_distort(const PointCloud& cloud, double delta, NoiseKind kind,
                          std::uint64_t seed) {
  require_2d(cloud, "affine_distort");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  const Box2 box = positive_box(cloud, "affine_distort");

  SplitMix64 rng(seed);
  double a, b;
  if (kind == NoiseKind::kUniform) {
    a = rng.uniform(1.0 - delta * box.w, 1.0 + delta * box.w);
    b = rng.uniform(1.0 - delta * box.h, 1.0 + delta * box.h);
  } else {
    a = positive_normal(rng, 1.0, delta * box.h);
    b = positive_normal(rng, 1.0, delta * box.w);
  }

  std::vector<Point> points;
  points.reserve(cloud.size());
  for (const Point& p : cloud.points())
    points.push_back(Point{{p[0] + (a - 1.0) * (p[0] - box.ox), p[1] + (b - 1.0) * (p[1] - box.oy)}});
  return PointCloud(std::move(points));
}

std::array<Point, 4> sample_projective_corners(double w, double h, double delta,
                                               NoiseKind kind, std::uint64_t seed) {
  if (!(w > 0.0) || !(h > 0.0)) throw std::invalid_argument("rectangle extents must be positive");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (kind == NoiseKind::kUniform && delta > 0.5)
    throw std::invalid_argument("uniform corner noise requires delta <= 0.5");

  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::array<Point, 4> corners;
    if (kind == NoiseKind::kUniform) {
      corners[0] = Point{{rng.uniform(0.0, delta * w), rng.uniform(0.0, delta * h)}};
      corners[1] = Point{{rng.uniform(0.0, delta * w), rng.uniform(h - delta * h, h)}};
      corners[2] = Point{{rng.uniform(w - delta * w, w), rng.uniform(0.0, delta * h)}};
      corners[3] = Point{{rng.uniform(w - delta * w, w), rng.uniform(h - delta * h, h)}};
    } else {
      corners[0] = Point{{truncated_normal(rng, 0.0, delta * w, 0.0, w),
                          truncated_normal(rng, 0.0, delta * h, 0.0, h)}};
      corners[1] = Point{{truncated_normal(rng, 0.0, delta * w, 0.0, w),
                          truncated_normal(rng, h, delta * h, 0.0, h)}};
      corners[2] = Point{{truncated_normal(rng, w, delta * w, 0.0, w),
                          truncated_normal(rng, 0.0, delta * h, 0.0, h)}};
      corners[3] = Point{{truncated_normal(rng, w, delta * w, 0.0, w),
                          truncated_normal(rng, h, delta * h, 0.0, h)}};
    }
    if (!degenerate_quad(corners)) return corners;
  }
  throw DegenerateQuad("sampled corners stayed collinear after 100 attempts");
}

Homography solve_homography(const std::array<Point, 4>& src, const std::array<Point, 4>& dst) {
  // Standard DLT with the bottom-right entry pinned to 1: each correspondence
  // (x,y) -> (u,v) yields two rows over the eight unknown entries.
  double system[8][9] = {};
  double max_abs = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double x = src[i][0], y = src[i][1];
    const double u = dst[i][0], v = dst[i][1];
    double* row0 = system[2 * i];
    double* row1 = system[2 * i + 1];
    row0[0] = x;
    row0[1] = y;
    row0[2] = 1.0;
    row0[6] = -u * x;
    row0[7] = -u * y;
    row0[8] = u;
    row1[3] = x;
    row1[4] = y;
    row1[5] = 1.0;
    row1[6] = -v * x;
    row1[7] = -v * y;
    row1[8] = v;
  }
  for (const auto& row : system)
    for (int c = 0; c < 9; ++c) max_abs = std::max(max_abs, std::abs(row[c]));

  const double pivot_floor = 1e-12 * std::max(1.0, max_abs);
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::abs(system[r][col]) > std::abs(system[pivot][col])) pivot = r;
    if (std::abs(system[pivot][col]) < pivot_floor)
      throw SingularSystem("degenerate point correspondences");
    if (pivot != col)
      for (int c = 0; c < 9; ++c) std::swap(system[pivot][c], system[col][c]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double factor = system[r][col] / system[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c < 9; ++c) system[r][c] -= factor * system[col][c];
    }
  }

  Homography result;
  for (int k = 0; k < 8; ++k) result.m[k] = system[k][8] / system[k][k];
  result.m[8] = 1.0;

  if (std::abs(result.determinant()) <= 1e-12)
    throw SingularSystem("homography is not invertible");
  double coord_scale = 1.0;
  for (int i = 0; i < 4; ++i)
    coord_scale = std::max({coord_scale, std::abs(dst[i][0]), std::abs(dst[i][1])});
  for (int i = 0; i < 4; ++i) {
    const Point mapped = result.apply(src[i]);
    const double residual =
        std::max(std::abs(mapped[0] - dst[i][0]), std::abs(mapped[1] - dst[i][1]));
    if (residual > 1e-9 * coord_scale)
      throw SingularSystem("correspondences are too ill-conditioned to solve");
  }
  return result;
}

PointCloud projective_distort(const PointCloud& cloud, double delta, NoiseKind kind,
                              std::uint64_t seed) {
  require_2d(cloud, "projective_distort");
  const Box2 box = positive_box(cloud, "projective_distort");

  const std::array<Point, 4> targets =
      sample_projective_corners(box.w, box.h, delta, kind, seed);
  const std::array<Point, 4> source = {Point{{0.0, 0.0}}, Point{{0.0, box.h}},
                                       Point{{box.w, 0.0}}, Point{{box.w, box.h}}};
  const Homography map = solve_homography(source, targets);

  std::vector<Point> points;
  points.reserve(cloud.size());
  for (const Point& p : cloud.points()) {
    const Point mapped = map.apply(Point{{p[0] - box.ox, p[1] - box.oy}});
    points.push_back(Point{{mapped[0] + box.ox, mapped[1] + box.oy}});
  }
  return PointCloud(std::move(points));
}

PointCloud jitter(const PointCloud& cloud, double epsilon, std::uint64_t seed) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
  const std::size_t dim = cloud.dimension();
  SplitMix64 rng(seed);

  std::vector<Point> points;
  points.reserve(cloud.size());
  std::vector<double> direction(dim);
  for (const Point& p : cloud.points()) {
    double norm = 0.0;
    for (int attempt = 0; attempt < 100 && norm < 1e-150; ++attempt) {
      norm = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        direction[c] = rng.normal();
        norm += direction[c] * direction[c];
      }
      norm = std::sqrt(norm);
    }
    const double radius =
        epsilon * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    const double factor = norm < 1e-150 ? 0.0 : radius / norm;
    Point moved = p;
    for (std::size_t c = 0; c < dim; ++c) moved.coords[c] += factor * direction[c];
    points.push_back(std::move(moved));
  }
  return PointCloud(std::move(points));
}

PointCloud apply_isometry(const PointCloud& cloud, const std::vector<double>& transform,
                          const std::vector<double>& translation) {
  const std::size_t dim = cloud.dimension();
  if (transform.size() != dim * dim || translation.size() != dim)
    throw DimensionMismatch("isometry shape does not match the cloud dimension");
  std::vector<Point> points;
  points.reserve(cloud.size());
  for (const Point& p : cloud.points()) {
    Point moved{std::vector<double>(dim)};
    for (std::size_t r = 0; r < dim; ++r) {
      double v = 0.0;
      for (std::size_t c = 0; c < dim; ++c) v += transform[r * dim + c] * p[c];
      moved.coords[r] = v + translation[r];
    }
    points.push_back(std::move(moved));
  }
  return PointCloud(std::move(points));
}

PointCloud random_isometry(const PointCloud& cloud, std::uint64_t seed,
                           bool allow_reflection) {
  const std::size_t dim = cloud.dimension();
  SplitMix64 rng(seed);

  // Orthonormalized gaussian rows give a uniformly random orthogonal matrix.
  std::vector<double> q(dim * dim);
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    for (double& v : q) v = rng.normal();
    ok = true;
    for (std::size_t r = 0; r < dim && ok; ++r) {
      for (std::size_t prev = 0; prev < r; ++prev) {
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) dot += q[r * dim + c] * q[prev * dim + c];
        for (std::size_t c = 0; c < dim; ++c) q[r * dim + c] -= dot * q[prev * dim + c];
      }
      double norm = 0.0;
      for (std::size_t c = 0; c < dim; ++c) norm += q[r * dim + c] * q[r * dim + c];
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        ok = false;
        break;
      }
      for (std::size_t c = 0; c < dim; ++c) q[r * dim + c] /= norm;
    }
  }
  if (!ok) throw Error("failed to sample an orthogonal matrix");

  // Determinant sign by elimination; flip the last row to steer orientation.
  std::vector<double> lu = q;
  double det = 1.0;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::abs(lu[r * dim + col]) > std::abs(lu[pivot * dim + col])) pivot = r;
    if (pivot != col) {
      for (std::size_t c = 0; c < dim; ++c) std::swap(lu[pivot * dim + c], lu[col * dim + c]);
      det = -det;
    }
    det *= lu[col * dim + col];
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double factor = lu[r * dim + col] / lu[col * dim + col];
      for (std::size_t c = col; c < dim; ++c) lu[r * dim + c] -= factor * lu[col * dim + c];
    }
  }
  const bool want_reflection = allow_reflection && (rng.next() & 1u);
  if ((det < 0.0) != want_reflection)
    for (std::size_t c = 0; c < dim; ++c) q[(dim - 1) * dim + c] = -q[(dim - 1) * dim + c];

  const BoundingBox box = bounding_box(cloud);
  const double span = std::max(1.0, euclidean(box.min, box.max));
  std::vector<double> translation(dim);
  for (std::size_t c = 0; c < dim; ++c) translation[c] = rng.uniform(-span, span);

  return apply_isometry(cloud, q, translation);
}

}  // namespace mg

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mg {

struct Point {
  std::vector<double> coords;

  std::size_t dimension() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline bool is_finite(const Point& p) {
  for (double c : p.coords)
    if (!std::isfinite(c)) return false;
  return true;
}

/// Finite ordered list of points of one common dimension. Duplicate points
/// are permitted. Immutable once constructed; safe to share across threads.
class PointCloud {
 public:
  explicit PointCloud(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("point cloud must be non-empty");
    const std::size_t dim = points_[0].dimension();
    if (dim == 0) throw std::invalid_argument("points must have dimension >= 1");
    for (const Point& p : points_) {
      if (p.dimension() != dim)
        throw std::invalid_argument("all points must share one dimension");
      if (!is_finite(p)) throw std::invalid_argument("point coordinates must be finite");
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_[0].dimension(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Point> points_;
};

using Metric = std::function<double(const Point&, const Point&)>;

inline double euclidean(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline Metric euclidean_metric() {
  return [](const Point& a, const Point& b) { return euclidean(a, b); };
}

struct BoundingBox {
  Point min;
  Point max;

  double extent(std::size_t i) const { return max[i] - min[i]; }

  Point center() const {
    Point c = min;
    for (std::size_t i = 0; i < c.coords.size(); ++i)
      c.coords[i] = (min[i] + max[i]) / 2.0;
    return c;
  }
};

inline BoundingBox bounding_box(const PointCloud& cloud) {
  BoundingBox box{cloud[0], cloud[0]};
  for (const Point& p : cloud.points()) {
    for (std::size_t i = 0; i < p.dimension(); ++i) {
      box.min.coords[i] = std::min(box.min.coords[i], p[i]);
      box.max.coords[i] = std::max(box.max.coords[i], p[i]);
    }
  }
  return box;
}

}  // namespace mg

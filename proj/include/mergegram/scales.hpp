#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace mg {

/// Distance scale; kInfinity marks lives that never end.
using Scale = double;

inline constexpr Scale kInfinity = std::numeric_limits<double>::infinity();

// Two scales count as equal within relative tolerance 1e-9 (absolute 1e-12
// near zero). All merge-scale grouping and general-position checks go through
// this one comparator.
inline constexpr double kRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteTolerance = 1e-12;

inline bool scale_eq(Scale a, Scale b) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  const double diff = std::abs(a - b);
  if (diff <= kAbsoluteTolerance) return true;
  return diff <= kRelativeTolerance * std::max(std::abs(a), std::abs(b));
}

inline bool scale_less(Scale a, Scale b) { return a < b && !scale_eq(a, b); }

/// Cluster merge scale of an MST edge. kHalf matches growing disks of radius
/// s around each point: two disks touch once s reaches half the edge length.
/// kFull merges at the full edge length instead.
enum class ScaleConvention { kHalf, kFull };

inline Scale merge_scale(double edge_length, ScaleConvention convention) {
  return convention == ScaleConvention::kHalf ? edge_length / 2.0 : edge_length;
}

/// Shortest round-trip decimal form; infinities print as "inf"/"-inf".
inline std::string format_scale(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

}  // namespace mg

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace mg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller-supplied distance function returned a negative or non-finite value.
struct InvalidMetric : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// nn_distances needs at least k+1 points.
struct CloudTooSmall : Error {
  using Error::Error;
};

/// A mergegram has more births than deaths at some scale.
struct NegativeMultiplicity : Error {
  using Error::Error;
};

/// Reconstruction requires every finite death scale to be shared by exactly
/// two pairs; carries the offending scale when one is known.
struct NotGeneralPosition : Error {
  explicit NotGeneralPosition(const std::string& what) : Error(what) {}
  NotGeneralPosition(const std::string& what, double death_scale)
      : Error(what), offending_death(death_scale) {}
  double offending_death = std::numeric_limits<double>::quiet_NaN();
};

/// A pair references a birth scale matching no constructed cluster.
struct DanglingBirth : Error {
  using Error::Error;
};

/// Birth-0 pairs demand more singleton leaves than remain.
struct LeafDeficit : Error {
  using Error::Error;
};

struct DegenerateBoundingBox : Error {
  using Error::Error;
};

struct DegenerateQuad : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  using Error::Error;
};

/// File or config parsing failure; line is 1-based, 0 when not line-addressable.
struct ParseError : Error {
  explicit ParseError(const std::string& what, std::size_t line_number = 0)
      : Error(what), line(line_number) {}
  std::size_t line = 0;
};

}  // namespace mg

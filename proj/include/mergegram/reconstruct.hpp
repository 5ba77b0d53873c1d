#pragma once

#include <optional>

#include "mergegram/errors.hpp"
#include "mergegram/diagram.hpp"
#include "mergegram/linkage.hpp"

namespace mg {

/// The first finite death scale that is not shared by exactly two pairs
/// (counting multiplicity), or nothing when every merger is binary and
/// deaths identify mergers uniquely. Death scales that straddle a tolerance
/// bucket boundary also count as violations.
std::optional<double> general_position_violation(const Mergegram& mergegram);

inline bool is_general_position(const Mergegram& mergegram) {
  return !general_position_violation(mergegram).has_value();
}

/// Inverse of mergegram() for general-position inputs: replays finite death
/// scales in ascending order, merging two clusters at each, and rebuilds the
/// merge tree uniquely up to leaf relabelling. Leaves receive indices 0..n-1
/// in order of first use. Throws NotGeneralPosition, DanglingBirth or
/// LeafDeficit on inputs no dendrogram could have produced.
Dendrogram reconstruct_dendrogram(const Mergegram& mergegram);

}  // namespace mg

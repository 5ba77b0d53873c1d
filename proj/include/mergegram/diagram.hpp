#pragma once

#include <cstdint>
#include <vector>

#include "mergegram/scales.hpp"

namespace mg {

/// One (birth, death) pair with multiplicity. death == kInfinity marks a
/// cluster that never merges again. Zero-length lives are invalid: birth must
/// precede death by more than the scale tolerance.
struct DiagramPair {
  Scale birth;
  Scale death;
  std::int64_t multiplicity;

  DiagramPair(Scale birth_scale, Scale death_scale, std::int64_t mult = 1);

  bool infinite() const { return death == kInfinity; }
  friend bool operator==(const DiagramPair&, const DiagramPair&) = default;
};

/// Multiset of pairs kept canonical: sorted by (birth, death) with
/// tolerance-equal pairs merged into one entry whose multiplicity
/// accumulates. Equality compares canonical entries exactly, so golden-value
/// tests match multisets bit for bit.
class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(const std::vector<DiagramPair>& pairs);

  void add(const DiagramPair& pair);

  const std::vector<DiagramPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::int64_t total_multiplicity() const;
  std::int64_t infinite_count() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<DiagramPair> pairs_;
};

/// Multiset of (birth, death) lives over all merge sets of a dendrogram.
using Mergegram = Diagram;

/// Multiset of (0, death) pairs; one per MST edge plus one infinite pair.
using PersistenceDiagram = Diagram;

/// Equality up to the scale tolerance, entry by entry with multiplicities.
bool approx_equal(const Diagram& a, const Diagram& b);

/// Per-entry multiplicity max(0, minuend - subtrahend); zero entries vanish.
Diagram multiset_difference(const Diagram& minuend, const Diagram& subtrahend);

}  // namespace mg

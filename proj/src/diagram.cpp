#include "mergegram/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mg {

DiagramPair::DiagramPair(Scale birth_scale, Scale death_scale, std::int64_t mult)
    : birth(birth_scale), death(death_scale), multiplicity(mult) {
  if (!std::isfinite(birth) || birth < 0.0)
    throw std::invalid_argument("pair birth must be finite and non-negative");
  if (std::isnan(death) || death == -kInfinity)
    throw std::invalid_argument("pair death must be a non-negative scale or infinity");
  if (!(birth < death) || scale_eq(birth, death))
    throw std::invalid_argument("pair must be born strictly before it dies");
  if (multiplicity < 1) throw std::invalid_argument("pair multiplicity must be positive");
}

namespace {

bool pair_key_less(const DiagramPair& a, const DiagramPair& b) {
  if (a.birth != b.birth) return a.birth < b.birth;
  return a.death < b.death;
}

bool pair_key_approx(const DiagramPair& a, const DiagramPair& b) {
  return scale_eq(a.birth, b.birth) && scale_eq(a.death, b.death);
}

}  // namespace

Diagram::Diagram(const std::vector<DiagramPair>& pairs) {
  for (const DiagramPair& p : pairs) add(p);
}

void Diagram::add(const DiagramPair& pair) {
  auto pos = std::lower_bound(pairs_.begin(), pairs_.end(), pair, pair_key_less);
  if (pos != pairs_.begin() && pair_key_approx(*std::prev(pos), pair)) {
    std::prev(pos)->multiplicity += pair.multiplicity;
    return;
  }
  if (pos != pairs_.end() && pair_key_approx(*pos, pair)) {
    pos->multiplicity += pair.multiplicity;
    return;
  }
  pairs_.insert(pos, pair);
}

std::int64_t Diagram::total_multiplicity() const {
  std::int64_t total = 0;
  for (const DiagramPair& p : pairs_) total += p.multiplicity;
  return total;
}

std::int64_t Diagram::infinite_count() const {
  std::int64_t total = 0;
  for (const DiagramPair& p : pairs_)
    if (p.infinite()) total += p.multiplicity;
  return total;
}

bool approx_equal(const Diagram& a, const Diagram& b) {
  const auto& pa = a.pairs();
  const auto& pb = b.pairs();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!pair_key_approx(pa[i], pb[i])) return false;
    if (pa[i].multiplicity != pb[i].multiplicity) return false;
  }
  return true;
}

Diagram multiset_difference(const Diagram& minuend, const Diagram& subtrahend) {
  std::vector<DiagramPair> remaining = minuend.pairs();
  for (const DiagramPair& s : subtrahend.pairs()) {
    for (DiagramPair& r : remaining) {
      if (pair_key_approx(r, s)) {
        r.multiplicity = std::max<std::int64_t>(0, r.multiplicity - s.multiplicity);
        break;
      }
    }
  }
  Diagram result;
  for (const DiagramPair& r : remaining)
    if (r.multiplicity > 0) result.add(r);
  return result;
}

}  // namespace mg

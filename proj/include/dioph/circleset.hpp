#pragma once

#include <string>
#include <vector>

#include "dioph/rational.hpp"

namespace dioph {

/// Open arc (lo, hi) of R/Z. Raw arcs may have endpoints outside [0, 1];
/// normalized arcs satisfy 0 <= lo < hi <= 1.
struct Arc {
  Rational lo;
  Rational hi;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of open arcs on the circle, kept in canonical form: sorted,
/// pairwise separated by gaps of positive length. Touching arcs are merged,
/// which changes the set only by finitely many points; the full circle is
/// represented as the single arc (0, 1).
class CircleIntervalSet {
 public:
  CircleIntervalSet() = default;

  /// Reduces endpoints mod 1, splits arcs crossing 0, sorts and merges.
  /// Throws std::domain_error for an arc with lo >= hi. An arc of length
  /// >= 1 yields the full circle.
  static CircleIntervalSet normalize(std::vector<Arc> raw);
  static CircleIntervalSet full();

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }

  Rational measure() const;

  /// True when `other` is a subset of this set.
  bool contains(const CircleIntervalSet& other) const;

  /// One line per arc: "p/q p/q".
  std::string dump() const;

  friend bool operator==(const CircleIntervalSet&, const CircleIntervalSet&) = default;

 private:
  explicit CircleIntervalSet(std::vector<Arc> canonical) : arcs_(std::move(canonical)) {}
  friend CircleIntervalSet unite(const CircleIntervalSet&, const CircleIntervalSet&);
  friend CircleIntervalSet intersect(const CircleIntervalSet&, const CircleIntervalSet&);

  std::vector<Arc> arcs_;
};

CircleIntervalSet unite(const CircleIntervalSet& a, const CircleIntervalSet& b);
CircleIntervalSet intersect(const CircleIntervalSet& a, const CircleIntervalSet& b);

/// Union of many sets by a balanced merge tree.
CircleIntervalSet unite_all(std::vector<CircleIntervalSet> sets);

}  // namespace dioph

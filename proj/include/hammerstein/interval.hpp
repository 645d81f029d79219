#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hammerstein {

/// Compact interval [lo, hi].
struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Finite union of disjoint compact intervals, kept sorted by lo.
using IntervalUnion = std::vector<Interval>;

inline IntervalUnion sorted_union(IntervalUnion v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return v;
}

/// Throws unless the union is nonempty, every interval has positive length,
/// and no two intervals overlap on a set of positive measure.
inline void validate_interval_union(const IntervalUnion& v) {
  if (v.empty()) throw std::invalid_argument("interval union must be nonempty");
  const IntervalUnion s = sorted_union(v);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].length() > 0.0))
      throw std::invalid_argument("interval union contains a degenerate interval");
    if (i + 1 < s.size() && s[i].hi > s[i + 1].lo)
      throw std::invalid_argument("interval union contains overlapping intervals");
  }
}

inline bool union_contains(const IntervalUnion& v, double t) {
  for (const Interval& iv : v)
    if (iv.contains(t)) return true;
  return false;
}

inline double union_length(const IntervalUnion& v) {
  double len = 0.0;
  for (const Interval& iv : v) len += iv.length();
  return len;
}

}  // namespace hammerstein

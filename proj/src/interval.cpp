#include "smallf/interval.hpp"

#include <algorithm>

namespace smallf {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw PreconditionError("interval with hi < lo: [" + lo.str() + ", " + hi.str() + "]");
}

IntervalSet::IntervalSet(std::vector<Interval> intervals) : items_(std::move(intervals)) {
  std::sort(items_.begin(), items_.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < items_.size(); ++i)
    if (!(items_[i - 1].hi < items_[i].lo))
      throw PreconditionError("intervals not disjoint: [" + items_[i - 1].lo.str() + ", " +
                              items_[i - 1].hi.str() + "] and [" + items_[i].lo.str() + ", " +
                              items_[i].hi.str() + "]");
}

Rational IntervalSet::total_length() const {
  Rational s(0);
  for (const auto& iv : items_) s += iv.length();
  return s;
}

Rational IntervalSet::min_gap() const {
  if (items_.size() < 2) throw PreconditionError("min_gap needs at least two intervals");
  Rational best = items_[1].lo - items_[0].hi;
  for (std::size_t i = 2; i < items_.size(); ++i) best = min(best, items_[i].lo - items_[i - 1].hi);
  return best;
}

bool IntervalSet::contains(const QuadSurd& x) const {
  // First interval whose hi is >= x.
  auto it = std::lower_bound(items_.begin(), items_.end(), x,
                             [](const Interval& iv, const QuadSurd& v) { return QuadSurd(iv.hi) < v; });
  return it != items_.end() && it->contains(x);
}

std::pair<std::size_t, std::size_t> IntervalSet::contained_in(const Interval& outer) const {
  auto first = std::lower_bound(items_.begin(), items_.end(), outer.lo,
                                [](const Interval& iv, const Rational& v) { return iv.lo < v; });
  auto last = std::upper_bound(first, items_.end(), outer.hi,
                               [](const Rational& v, const Interval& iv) { return v < iv.hi; });
  return {static_cast<std::size_t>(first - items_.begin()), static_cast<std::size_t>(last - items_.begin())};
}

std::pair<std::size_t, std::size_t> IntervalSet::meeting(const Interval& u) const {
  auto first = std::lower_bound(items_.begin(), items_.end(), u.lo,
                                [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  auto last = std::upper_bound(first, items_.end(), u.hi,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  return {static_cast<std::size_t>(first - items_.begin()), static_cast<std::size_t>(last - items_.begin())};
}

std::string IntervalSet::json() const {
  std::string out = "[";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ",";
    out += "[\"" + items_[i].lo.str() + "\",\"" + items_[i].hi.str() + "\"]";
  }
  return out + "]";
}

}  // namespace smallf

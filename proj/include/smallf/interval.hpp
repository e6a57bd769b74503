#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "smallf/rational.hpp"
#include "smallf/surd.hpp"

namespace smallf {

/// Closed interval [lo, hi] with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational lo_, Rational hi_);

  Rational length() const { return hi - lo; }
  Rational center() const { return (lo + hi) / Rational(2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const QuadSurd& x) const { return QuadSurd(lo) <= x && x <= QuadSurd(hi); }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return !(o.hi < lo || hi < o.lo); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of pairwise disjoint closed intervals, sorted, with strictly
/// positive gaps between neighbours.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Sorts the input and throws PreconditionError if two intervals touch or overlap.
  explicit IntervalSet(std::vector<Interval> intervals);
  static IntervalSet unit() { return IntervalSet({Interval(Rational(0), Rational(1))}); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Interval& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Interval>& intervals() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  Rational total_length() const;
  /// Smallest gap between consecutive intervals; nullopt-like zero-size sets throw.
  Rational min_gap() const;
  bool contains(const QuadSurd& x) const;
  bool contains(const Rational& x) const { return contains(QuadSurd(x)); }
  /// Index range [first, last) of members lying entirely inside `outer`.
  std::pair<std::size_t, std::size_t> contained_in(const Interval& outer) const;
  /// Indices [first, last) of members meeting `u`.
  std::pair<std::size_t, std::size_t> meeting(const Interval& u) const;

  /// Array of ["lo", "hi"] rational strings.
  std::string json() const;

 private:
  std::vector<Interval> items_;
};

}  // namespace smallf

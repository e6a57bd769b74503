#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smallf/rational.hpp"
#include "smallf/surd.hpp"

namespace smallf {

/// Regular continued fraction [a0; a1, a2, ...] given as a finite prefix and
/// an optional repeating period. An empty period means the expansion is
/// finite and the value rational.
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<std::int64_t> prefix,
                             std::vector<std::int64_t> period = {});

  static ContinuedFraction from_rational(const Rational& x);
  /// Exact expansion of a quadratic irrational (periodic by Lagrange) or of a
  /// rational surd. Throws if no period appears within max_terms quotients.
  static ContinuedFraction from_surd(const QuadSurd& x, std::size_t max_terms = 100000);

  bool is_rational() const { return period_.empty(); }
  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  const std::vector<std::int64_t>& period() const { return period_; }

  /// Partial quotient a_i; nullopt past the end of a finite expansion.
  std::optional<std::int64_t> term(std::size_t i) const;
  /// Exact value (a rational surd when the expansion is finite). Expansions
  /// built from terms recover the radicand by trial division, which is slow
  /// for long periods; from_surd keeps its input instead.
  QuadSurd value() const;

 private:
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> period_;
  std::optional<QuadSurd> exact_;
};

/// Convergents p_k/q_k with q_k <= qmax, in order.
std::vector<Rational> convergents(const ContinuedFraction& x, std::int64_t qmax);

/// Best rational approximations of the first kind with denominator <= qmax
/// (each strictly closer to x than every fraction of smaller denominator),
/// ascending in denominator. Built from convergents and semiconvergents.
std::vector<Rational> best_approximations(const ContinuedFraction& x, std::int64_t qmax);

/// Every reduced p/q in [lo, hi] with q <= qmax, ascending and distinct.
std::vector<Rational> farey_enumerate(const Rational& lo, const Rational& hi, std::int64_t qmax);

}  // namespace smallf

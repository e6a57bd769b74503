#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace smallf {

/// h(x) = x^a * ln(1/x)^(-b), with h(0) = 0.
///
/// Valid members vanish at zero: a > 0, or a = 0 and b > 0. Evaluation is
/// restricted to (0, domain_max()], where h is non-decreasing.
class DimensionFunction {
 public:
  DimensionFunction(double a, double b);

  /// Accepts "x^0.5", "log^-2", "x^2*log^-3", "x", "1/log" and the JSON
  /// object form {"a": .., "b": ..}.
  static DimensionFunction parse(std::string_view text);

  double a() const { return a_; }
  double b() const { return b_; }

  /// e^(-max(1, |b|/a)) for a > 0, e^(-1) for a = 0. A pure power (b = 0)
  /// is monotone on the whole half-line and reports +inf.
  double domain_max() const;
  bool in_domain(double x) const { return x > 0 && x <= domain_max(); }

  double eval(double x) const;
  /// ln h(x) given L = ln(1/x); lets callers work far below double range.
  double log_eval_at(double L) const;

  /// Sign test of h'' over x in (0, xmax]: concave iff
  /// (a + b/L)(a + b/L - 1) + b/L^2 <= 0 for every L >= ln(1/xmax).
  bool is_concave_on(double xmax) const;
  bool is_concave() const { return is_concave_on(domain_max()); }

  std::string str() const;
  std::string json() const;

  friend bool operator==(const DimensionFunction&, const DimensionFunction&) = default;

 private:
  double a_;
  double b_;
};

enum class OrderRelation { Less, Greater, Equivalent };
std::string to_string(OrderRelation r);

/// Less means g is dimensionally smaller than h (h/g -> 0 at 0): lexicographic on (a, b).
OrderRelation compare(const DimensionFunction& g, const DimensionFunction& h);

/// Exponent pair of h/g. Requires compare(g, h) == Less.
DimensionFunction gap(const DimensionFunction& g, const DimensionFunction& h);

/// x in the domain with h(x) = y, by bisection on L = ln(1/x).
double inverse(const DimensionFunction& h, double y);
/// L = ln(1/x) solving ln h(x) = log_y; usable when x underflows a double.
double inverse_log(const DimensionFunction& h, double log_y);

/// N * h(delta).
double hausdorff_cost(std::uint64_t count, double delta, const DimensionFunction& h);

}  // namespace smallf

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "smallf/rational.hpp"

namespace smallf {

/// Exact element a + b*sqrt(d) of a real quadratic field, with rational a, b
/// and a positive non-square radicand d. A surd with b == 0 is a plain
/// rational and combines with surds of any radicand.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(const Rational& a) : a_(a) {}  // NOLINT: rationals embed implicitly
  QuadSurd(long long a) : a_(a) {}        // NOLINT
  QuadSurd(int a) : a_(a) {}              // NOLINT
  QuadSurd(Rational a, Rational b, std::int64_t radicand);

  /// sqrt(d) itself.
  static QuadSurd sqrt_of(std::int64_t radicand);
  /// Sums of terms "c", "c*sqrt(d)", "sqrt(d)" and "sqrt(d)/q" with rational c,
  /// e.g. "sqrt(2)-1" or "1/2*sqrt(5) - 1/2". All surd terms share one radicand.
  static QuadSurd parse(std::string_view text);
  static QuadSurd sqrt2() { return sqrt_of(2); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  /// Radicand (square-free), or 0 for a rational value.
  std::int64_t radicand() const { return b_.sign() == 0 ? 0 : d_; }
  bool is_rational() const { return b_.sign() == 0; }

  int sign() const;
  QuadSurd conjugate() const;
  QuadSurd abs() const { return sign() < 0 ? -*this : *this; }
  BigInt floor() const;
  double to_double() const;
  long double to_long_double() const;
  std::string str() const;

  QuadSurd& operator+=(const QuadSurd& o);
  QuadSurd& operator-=(const QuadSurd& o);
  QuadSurd& operator*=(const QuadSurd& o);
  QuadSurd& operator/=(const QuadSurd& o);

  friend QuadSurd operator+(QuadSurd x, const QuadSurd& y) { return x += y; }
  friend QuadSurd operator-(QuadSurd x, const QuadSurd& y) { return x -= y; }
  friend QuadSurd operator*(QuadSurd x, const QuadSurd& y) { return x *= y; }
  friend QuadSurd operator/(QuadSurd x, const QuadSurd& y) { return x /= y; }
  friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(Unchecked{}, -x.a_, -x.b_, x.d_); }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return (x - y).sign() == 0;
  }
  friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Unchecked {};
  QuadSurd(Unchecked, Rational a, Rational b, std::int64_t d)
      : a_(std::move(a)), b_(std::move(b)), d_(d) {}
  std::int64_t common_radicand(const QuadSurd& o) const;

  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

/// Sign of a + b*sqrt(d) for machine integers; exact via 128-bit squares.
int surd_sign(std::int64_t a, std::int64_t b, std::int64_t d);

}  // namespace smallf

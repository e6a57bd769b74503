#pragma once

#include <compare>
#include <string>

namespace smallf {

/// Level-index representation of a nonnegative real: exp applied `level`
/// times to `mantissa`. Level 0 holds values in [0, e) directly; for level
/// >= 1 the mantissa lies in [1, e), which makes the form unique.
///
/// Mantissas are long double. Results are exact in level; when an addition
/// or subtraction mixes operands whose logarithms exceed 1e300 the smaller
/// operand is dropped (its relative contribution is below any representable
/// precision).
class TowerScalar {
 public:
  TowerScalar() = default;

  static TowerScalar from_real(long double v);
  /// Builds from an explicit (level, mantissa) pair; throws if not normalized.
  static TowerScalar from_parts(int level, long double mantissa);
  /// e^x.
  static TowerScalar exp_of(const TowerScalar& x);

  int level() const { return level_; }
  long double mantissa() const { return mantissa_; }
  bool is_zero() const { return level_ == 0 && mantissa_ == 0; }

  /// Natural log. Lowers the level by exactly one when level >= 1; throws
  /// DomainError for values <= 1 (the result would leave the nonnegative form).
  TowerScalar log() const;

  /// Value as long double, +inf when it overflows.
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }
  /// True when the value fits a double below 1e300.
  bool finite() const;
  std::string str() const;

  friend bool operator==(const TowerScalar&, const TowerScalar&) = default;
  friend std::partial_ordering operator<=>(const TowerScalar& a, const TowerScalar& b) {
    if (a.level_ != b.level_) return a.level_ <=> b.level_;
    return a.mantissa_ <=> b.mantissa_;
  }

 private:
  TowerScalar(int level, long double mantissa) : level_(level), mantissa_(mantissa) {}
  int level_ = 0;
  long double mantissa_ = 0;
};

TowerScalar tower_from_real(long double v);
TowerScalar tower_exp(const TowerScalar& t);
TowerScalar tower_log(const TowerScalar& t);
TowerScalar tower_add(const TowerScalar& a, const TowerScalar& b);
TowerScalar tower_mul(const TowerScalar& a, const TowerScalar& b);
/// t^r for real r >= 0.
TowerScalar tower_pow(const TowerScalar& t, long double r);
/// c * t for real c >= 0.
TowerScalar tower_scale(const TowerScalar& t, long double c);
int tower_cmp(const TowerScalar& a, const TowerScalar& b);

/// Signed real carried as sign * TowerScalar. Used for log-space quantities
/// that may be negative.
///
/// `resolved` turns false when a subtraction of two huge, indistinguishable
/// magnitudes could not determine the result; it propagates through
/// subsequent arithmetic.
class SignedTower {
 public:
  SignedTower() = default;
  SignedTower(int sign, TowerScalar magnitude, bool resolved = true);
  static SignedTower from_real(long double v);
  /// ln t for t > 0, negative when t < 1.
  static SignedTower log_of(const TowerScalar& t);

  int sign() const { return sign_; }
  const TowerScalar& magnitude() const { return mag_; }
  bool resolved() const { return resolved_; }

  /// e^x as a nonnegative tower (underflows to zero for very negative x).
  TowerScalar exp() const;
  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }
  std::string str() const;

  friend SignedTower operator-(const SignedTower& x) {
    return SignedTower(-x.sign_, x.mag_, x.resolved_);
  }
  friend SignedTower operator+(const SignedTower& x, const SignedTower& y);
  friend SignedTower operator-(const SignedTower& x, const SignedTower& y) { return x + (-y); }
  /// Multiplication by a real constant.
  friend SignedTower operator*(long double c, const SignedTower& x);

  friend std::partial_ordering operator<=>(const SignedTower& a, const SignedTower& b);
  friend bool operator==(const SignedTower& a, const SignedTower& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }

 private:
  int sign_ = 0;
  TowerScalar mag_;
  bool resolved_ = true;
};

}  // namespace smallf

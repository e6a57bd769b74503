#include "smallf/tower.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <utility>

#include "smallf/rational.hpp"

namespace smallf {

namespace {

constexpr long double kE = 2.718281828459045235360287471352662498L;
// Past this log-magnitude, adding a smaller operand cannot change the value.
constexpr long double kNegligibleLog = 1e300L;

bool fits(long double v) { return std::isfinite(v) && v < LDBL_MAX / 4; }

// |a - b| for a >= b >= 0, flagged when the difference is numerically undetermined.
std::pair<TowerScalar, bool> mag_sub(const TowerScalar& a, const TowerScalar& b) {
  if (a == b) return {TowerScalar(), !(a.level() >= 3 && !a.finite())};
  const long double av = a.to_long_double();
  if (fits(av)) return {TowerScalar::from_real(std::max(0.0L, av - b.to_long_double())), true};
  if (b.level() == 0 && b.mantissa() <= 1) return {a, true};
  const long double la = a.log().to_long_double();
  // Distinct representations this large differ in log by far more than the
  // ratio b/a can register, so b is negligible.
  if (!fits(la) || la >= kNegligibleLog) return {a, true};
  const long double lb = b.log().to_long_double();
  const long double d = lb - la;
  const long double tol = 8 * LDBL_EPSILON * la;
  if (-d < tol) return {a, false};
  return {TowerScalar::exp_of(TowerScalar::from_real(la + std::log1p(-std::exp(d)))), true};
}

}  // namespace

TowerScalar TowerScalar::from_real(long double v) {
  if (!(v >= 0)) throw DomainError("tower: negative or NaN value");
  if (std::isinf(v)) throw DomainError("tower: infinite value");
  int level = 0;
  while (v >= kE) {
    v = std::log(v);
    ++level;
  }
  return TowerScalar(level, v);
}

TowerScalar TowerScalar::from_parts(int level, long double mantissa) {
  if (level < 0) throw DomainError("tower: negative level");
  if (level == 0 ? !(mantissa >= 0 && mantissa < kE) : !(mantissa >= 1 && mantissa < kE))
    throw DomainError("tower: mantissa not normalized for its level");
  return TowerScalar(level, mantissa);
}

TowerScalar TowerScalar::exp_of(const TowerScalar& x) {
  if (x.level_ == 0) {
    if (x.mantissa_ < 1) return TowerScalar(0, std::exp(x.mantissa_));
    return TowerScalar(1, x.mantissa_);
  }
  return TowerScalar(x.level_ + 1, x.mantissa_);
}

TowerScalar TowerScalar::log() const {
  if (level_ == 0) {
    if (mantissa_ <= 1) throw DomainError("tower_log: value <= 1 has no nonnegative log");
    return TowerScalar(0, std::log(mantissa_));
  }
  if (level_ == 1) return TowerScalar(0, mantissa_);
  return TowerScalar(level_ - 1, mantissa_);
}

long double TowerScalar::to_long_double() const {
  long double v = mantissa_;
  for (int i = 0; i < level_; ++i) {
    if (v > 11400) return HUGE_VALL;
    v = std::exp(v);
  }
  return v;
}

bool TowerScalar::finite() const { return to_long_double() < 1e300L; }

std::string TowerScalar::str() const {
  char buf[64];
  if (finite()) {
    std::snprintf(buf, sizeof buf, "%.12Lg", to_long_double());
  } else {
    std::snprintf(buf, sizeof buf, "exp^%d(%.15Lg)", level_, mantissa_);
  }
  return buf;
}

TowerScalar tower_from_real(long double v) { return TowerScalar::from_real(v); }
TowerScalar tower_exp(const TowerScalar& t) { return TowerScalar::exp_of(t); }
TowerScalar tower_log(const TowerScalar& t) { return t.log(); }

TowerScalar tower_add(const TowerScalar& x, const TowerScalar& y) {
  const TowerScalar& a = x < y ? y : x;
  const TowerScalar& b = x < y ? x : y;
  if (b.is_zero()) return a;
  const long double av = a.to_long_double();
  if (fits(av)) return TowerScalar::from_real(av + b.to_long_double());
  if (b.level() == 0 && b.mantissa() <= 1) return a;
  const long double la = a.log().to_long_double();
  if (!fits(la) || la >= kNegligibleLog) return a;
  const long double lb = b.log().to_long_double();
  return TowerScalar::exp_of(TowerScalar::from_real(la + std::log1p(std::exp(lb - la))));
}

TowerScalar tower_mul(const TowerScalar& a, const TowerScalar& b) {
  if (a.is_zero() || b.is_zero()) return TowerScalar();
  const long double av = a.to_long_double();
  const long double bv = b.to_long_double();
  if (fits(av) && fits(bv) && fits(av * bv)) return TowerScalar::from_real(av * bv);
  return (SignedTower::log_of(a) + SignedTower::log_of(b)).exp();
}

TowerScalar tower_pow(const TowerScalar& t, long double r) {
  if (!(r >= 0)) throw DomainError("tower_pow: exponent must be >= 0");
  if (r == 0) return TowerScalar::from_real(1);
  if (t.is_zero()) return TowerScalar();
  return (r * SignedTower::log_of(t)).exp();
}

TowerScalar tower_scale(const TowerScalar& t, long double c) {
  return tower_mul(t, TowerScalar::from_real(c));
}

int tower_cmp(const TowerScalar& a, const TowerScalar& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

SignedTower::SignedTower(int sign, TowerScalar magnitude, bool resolved)
    : sign_(magnitude.is_zero() ? 0 : (sign > 0 ? 1 : (sign < 0 ? -1 : 0))),
      mag_(sign_ == 0 ? TowerScalar() : magnitude),
      resolved_(resolved) {}

SignedTower SignedTower::from_real(long double v) {
  if (std::isnan(v)) throw DomainError("SignedTower: NaN");
  return SignedTower(v < 0 ? -1 : (v > 0 ? 1 : 0), TowerScalar::from_real(std::fabs(v)));
}

SignedTower SignedTower::log_of(const TowerScalar& t) {
  if (t.is_zero()) throw DomainError("log of zero");
  if (t.level() == 0) return from_real(std::log(t.mantissa()));
  return SignedTower(1, t.log());
}

TowerScalar SignedTower::exp() const {
  if (sign_ >= 0) return TowerScalar::exp_of(mag_);
  const long double m = mag_.to_long_double();
  if (!fits(m)) return TowerScalar();
  return TowerScalar::from_real(std::exp(-m));
}

long double SignedTower::to_long_double() const { return sign_ * mag_.to_long_double(); }

std::string SignedTower::str() const { return (sign_ < 0 ? "-" : "") + mag_.str(); }

SignedTower operator+(const SignedTower& x, const SignedTower& y) {
  const bool resolved = x.resolved_ && y.resolved_;
  if (x.sign_ == 0) return SignedTower(y.sign_, y.mag_, resolved);
  if (y.sign_ == 0) return SignedTower(x.sign_, x.mag_, resolved);
  if (x.sign_ == y.sign_) return SignedTower(x.sign_, tower_add(x.mag_, y.mag_), resolved);
  const bool x_larger = !(x.mag_ < y.mag_);
  const auto& big = x_larger ? x : y;
  const auto& small = x_larger ? y : x;
  auto [mag, ok] = mag_sub(big.mag_, small.mag_);
  return SignedTower(big.sign_, mag, resolved && ok);
}

SignedTower operator*(long double c, const SignedTower& x) {
  if (std::isnan(c)) throw DomainError("SignedTower: NaN factor");
  if (c == 0 || x.sign_ == 0) return SignedTower(0, TowerScalar(), x.resolved_);
  const int s = (c < 0 ? -1 : 1) * x.sign_;
  return SignedTower(s, tower_scale(x.mag_, std::fabs(c)), x.resolved_);
}

std::partial_ordering operator<=>(const SignedTower& a, const SignedTower& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ >= 0) return a.mag_ <=> b.mag_;
  return b.mag_ <=> a.mag_;
}

}  // namespace smallf

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace smallf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

using BigInt = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design of arithmetic
  Rational(int n) : v_(static_cast<long>(n)) {}        // NOLINT
  Rational(long n) : v_(n) {}                          // NOLINT
  Rational(const BigInt& n) : v_(n) {}                 // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  Rational(long long num, long long den);

  /// Parses "p/q", "p", or a finite decimal like "0.25" exactly.
  static Rational parse(std::string_view text);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }
  long double to_long_double() const;
  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  BigInt floor() const;
  BigInt ceil() const;
  Rational abs() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Raw {};
  Rational(Raw, mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

Rational pow(const Rational& base, unsigned exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// floor(n^(p/q)) for n >= 0, exact.
BigInt floor_rational_power(const BigInt& n, const Rational& exponent);

std::int64_t to_int64(const BigInt& v);

/// ln|x| for x != 0, accurate for numerators and denominators far beyond double range.
double log_abs(const Rational& x);

}  // namespace smallf

#include "smallf/surd.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace smallf {

namespace {

// Splits d = s^2 * core with core square-free.
std::int64_t square_free_core(std::int64_t d, std::int64_t& s) {
  s = 1;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    while (d % (p * p) == 0) {
      d /= p * p;
      s *= p;
    }
  }
  return d;
}

}  // namespace

QuadSurd::QuadSurd(Rational a, Rational b, std::int64_t radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
  if (b_.sign() == 0) {
    d_ = 0;
    return;
  }
  if (radicand <= 0) throw DomainError("surd radicand must be positive, got " + std::to_string(radicand));
  std::int64_t s = 1;
  d_ = square_free_core(radicand, s);
  b_ *= Rational(s);
  if (d_ == 1) {
    a_ += b_;
    b_ = Rational(0);
    d_ = 0;
  }
}

QuadSurd QuadSurd::sqrt_of(std::int64_t radicand) { return QuadSurd(0, 1, radicand); }

QuadSurd QuadSurd::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw PreconditionError("QuadSurd::parse: empty input");
  auto fail = [&](const std::string& why) -> QuadSurd {
    throw PreconditionError("QuadSurd::parse: " + why + " in \"" + std::string(text) + "\"");
  };
  QuadSurd total;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i > 0) {
      fail("expected + or -");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    i = j;
    if (term.empty()) fail("empty term");
    const auto at = term.find("sqrt(");
    if (at == std::string::npos) {
      total += QuadSurd(Rational::parse(term) * Rational(sign));
      continue;
    }
    Rational coef(1);
    if (at > 0) {
      std::string c = term.substr(0, at);
      if (c.back() == '*') c.pop_back();
      coef = Rational::parse(c);
    }
    const auto close = term.find(')', at);
    if (close == std::string::npos) fail("unclosed sqrt(");
    const std::string rad = term.substr(at + 5, close - at - 5);
    std::int64_t d = 0;
    try {
      std::size_t used = 0;
      d = std::stoll(rad, &used);
      if (used != rad.size()) fail("bad radicand");
    } catch (const std::logic_error&) {
      fail("bad radicand");
    }
    if (d < 0) fail("negative radicand");
    std::string rest = term.substr(close + 1);
    if (!rest.empty()) {
      if (rest[0] != '/') fail("unexpected \"" + rest + "\"");
      coef /= Rational::parse(rest.substr(1));
    }
    total += QuadSurd(Rational(0), coef * Rational(sign), d);
  }
  return total;
}

std::int64_t QuadSurd::common_radicand(const QuadSurd& o) const {
  if (is_rational()) return o.radicand();
  if (o.is_rational() || o.d_ == d_) return d_;
  throw DomainError("surds over different quadratic fields: sqrt(" + std::to_string(d_) +
                    ") vs sqrt(" + std::to_string(o.d_) + ")");
}

int QuadSurd::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 against b^2 d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;  // unreachable for non-square d, kept for safety
  return lhs > rhs ? sa : sb;
}

QuadSurd QuadSurd::conjugate() const { return QuadSurd(Unchecked{}, a_, -b_, d_); }

BigInt QuadSurd::floor() const {
  if (is_rational()) return a_.floor();
  BigInt f(static_cast<long>(std::floor(to_double())));
  // Fix up the floating estimate exactly.
  while ((*this - QuadSurd(Rational(f))).sign() < 0) f -= 1;
  while ((*this - QuadSurd(Rational(f + 1))).sign() >= 0) f += 1;
  return f;
}

long double QuadSurd::to_long_double() const {
  const long double root = std::sqrt(static_cast<long double>(d_));
  const long double a = a_.to_long_double();
  if (is_rational()) return a;
  const long double b = b_.to_long_double();
  if (a_.sign() == 0 || a_.sign() == b_.sign()) return a + b * root;
  // Cancelling terms: use (a^2 - b^2 d) / (a - b sqrt d).
  const Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  return norm.to_long_double() / (a - b * root);
}

double QuadSurd::to_double() const { return static_cast<double>(to_long_double()); }

std::string QuadSurd::str() const {
  if (is_rational()) return a_.str();
  std::string out;
  if (a_.sign() != 0) out = a_.str() + (b_.sign() > 0 ? "+" : "");
  out += b_.str() + "*sqrt(" + std::to_string(d_) + ")";
  return out;
}

QuadSurd& QuadSurd::operator+=(const QuadSurd& o) {
  const std::int64_t d = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  d_ = b_.sign() == 0 ? 0 : d;
  return *this;
}

QuadSurd& QuadSurd::operator-=(const QuadSurd& o) {
  const std::int64_t d = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  d_ = b_.sign() == 0 ? 0 : d;
  return *this;
}

QuadSurd& QuadSurd::operator*=(const QuadSurd& o) {
  const std::int64_t d = common_radicand(o);
  Rational a = a_ * o.a_;
  if (d != 0) a += b_ * o.b_ * Rational(d);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = b_.sign() == 0 ? 0 : d;
  return *this;
}

QuadSurd& QuadSurd::operator/=(const QuadSurd& o) {
  if (o.sign() == 0) throw DomainError("surd division by zero");
  if (o.is_rational()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(o.d_);
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  return *this;
}

int surd_sign(std::int64_t a, std::int64_t b, std::int64_t d) {
  auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const __int128 lhs = static_cast<__int128>(a) * a;
  const __int128 rhs = static_cast<__int128>(b) * b * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

}  // namespace smallf

#include "smallf/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace smallf {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(long long num, long long den)
    : Rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))) {}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw DomainError("empty rational literal");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative || (!whole.empty() && whole[0] == '+')) whole.erase(whole.begin());
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("bad decimal literal: " + s);
      BigInt scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      BigInt num = BigInt(whole) * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
      if (negative) num = -num;
      return Rational(num, scale);
    }
    return Rational(BigInt(s));
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational literal: " + s);
  }
}

long double Rational::to_long_double() const {
  // Good enough for reporting; mpq has no long double conversion.
  const double hi = v_.get_d();
  const mpq_class rest = v_ - mpq_class(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational Rational::abs() const { return Rational(Raw{}, mpq_class(::abs(v_))); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rational(n, d);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

BigInt floor_rational_power(const BigInt& n, const Rational& exponent) {
  if (n < 0) throw DomainError("floor_rational_power: negative base");
  if (exponent.sign() < 0) throw DomainError("floor_rational_power: negative exponent");
  const BigInt p = exponent.num();
  const BigInt q = exponent.den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) throw DomainError("exponent too large");
  BigInt powered;
  mpz_pow_ui(powered.get_mpz_t(), n.get_mpz_t(), p.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), powered.get_mpz_t(), q.get_ui());
  return root;
}

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw DomainError("integer exceeds 64-bit range: " + v.get_str());
  return v.get_si();
}

namespace {
double log_mpz(const BigInt& v) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}
}  // namespace

double log_abs(const Rational& x) {
  if (x.sign() == 0) throw DomainError("log_abs: zero");
  return log_mpz(x.num()) - log_mpz(x.den());
}

}  // namespace smallf

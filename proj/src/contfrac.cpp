#include "smallf/contfrac.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace smallf {

namespace {

// Square-free reduction of an integer discriminant: D = s^2 * core.
std::int64_t split_square(BigInt d, BigInt& s) {
  s = 1;
  for (long p = 2; BigInt(p) * p <= d; ++p) {
    const BigInt pp = BigInt(p) * p;
    while (d % pp == 0) {
      d /= pp;
      s *= p;
    }
  }
  return to_int64(d);
}

struct Matrix {
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;  // (h_{i-1}, h_{i-2}, k_{i-1}, k_{i-2})
  void push(std::int64_t a) {
    BigInt h = BigInt(static_cast<long>(a)) * h1 + h2;
    BigInt k = BigInt(static_cast<long>(a)) * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
};

}  // namespace

ContinuedFraction::ContinuedFraction(std::vector<std::int64_t> prefix,
                                     std::vector<std::int64_t> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (prefix_.empty() && period_.empty()) throw DomainError("empty continued fraction");
  for (std::size_t i = 0; i < prefix_.size() + period_.size(); ++i) {
    const std::int64_t a = i < prefix_.size() ? prefix_[i] : period_[i - prefix_.size()];
    if (i > 0 && a < 1) throw DomainError("partial quotients after the first must be >= 1");
  }
  if (prefix_.empty()) {
    // The leading quotient may not repeat into the period position 0 with a0 < 1.
    if (period_.front() < 1) throw DomainError("periodic part must have quotients >= 1");
  }
}

ContinuedFraction ContinuedFraction::from_rational(const Rational& x) {
  std::vector<std::int64_t> terms;
  BigInt n = x.num();
  BigInt d = x.den();
  while (d != 0) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    terms.push_back(to_int64(q));
    BigInt r = n - q * d;
    n = d;
    d = r;
  }
  return ContinuedFraction(std::move(terms));
}

ContinuedFraction ContinuedFraction::from_surd(const QuadSurd& x, std::size_t max_terms) {
  if (x.is_rational()) return from_rational(x.rational_part());
  std::vector<std::int64_t> terms;
  std::map<std::string, std::size_t> seen;
  QuadSurd y = x;
  for (std::size_t i = 0; i < max_terms; ++i) {
    const std::string key = y.str();
    if (auto it = seen.find(key); it != seen.end()) {
      std::vector<std::int64_t> prefix(terms.begin(), terms.begin() + static_cast<long>(it->second));
      std::vector<std::int64_t> period(terms.begin() + static_cast<long>(it->second), terms.end());
      ContinuedFraction cf(std::move(prefix), std::move(period));
      cf.exact_ = x;
      return cf;
    }
    seen.emplace(key, i);
    const BigInt a = y.floor();
    terms.push_back(to_int64(a));
    y = QuadSurd(1) / (y - QuadSurd(Rational(a)));
  }
  throw Error("continued fraction period not found within term budget");
}

std::optional<std::int64_t> ContinuedFraction::term(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  if (period_.empty()) return std::nullopt;
  return period_[(i - prefix_.size()) % period_.size()];
}

QuadSurd ContinuedFraction::value() const {
  if (exact_) return *exact_;
  if (is_rational()) {
    Rational v(prefix_.back());
    for (std::size_t i = prefix_.size() - 1; i-- > 0;) v = Rational(prefix_[i]) + Rational(1) / v;
    return QuadSurd(v);
  }
  // Purely periodic tail y = [b1; ..., bp, y] solves k_p y^2 + (k_{p-1} - h_p) y - h_{p-1} = 0.
  Matrix per;
  for (auto b : period_) per.push(b);
  const BigInt qa = per.k1;
  const BigInt qb = per.k2 - per.h1;
  const BigInt qc = -per.h2;
  const BigInt disc = qb * qb - 4 * qa * qc;
  BigInt s;
  const std::int64_t core = split_square(disc, s);
  QuadSurd root(Rational(0), Rational(s), core);
  QuadSurd y = (QuadSurd(Rational(-qb)) + root) / QuadSurd(Rational(2 * qa));
  Matrix pre;
  for (auto a : prefix_) pre.push(a);
  if (prefix_.empty()) return y;
  return (QuadSurd(Rational(pre.h1)) * y + QuadSurd(Rational(pre.h2))) /
         (QuadSurd(Rational(pre.k1)) * y + QuadSurd(Rational(pre.k2)));
}

std::vector<Rational> convergents(const ContinuedFraction& x, std::int64_t qmax) {
  std::vector<Rational> out;
  Matrix m;
  for (std::size_t i = 0;; ++i) {
    auto a = x.term(i);
    if (!a) break;
    m.push(*a);
    if (m.k1 > qmax) break;
    out.emplace_back(m.h1, m.k1);
  }
  return out;
}

std::vector<Rational> best_approximations(const ContinuedFraction& x, std::int64_t qmax) {
  if (qmax < 1) throw PreconditionError("best_approximations: qmax must be >= 1");
  const QuadSurd value = x.value();
  std::vector<Rational> out;
  std::optional<QuadSurd> best_error;
  auto offer = [&](const BigInt& p, const BigInt& q) {
    Rational c(p, q);
    QuadSurd err = (value - QuadSurd(c)).abs();
    if (!best_error || err < *best_error) {
      best_error = err;
      out.push_back(std::move(c));
    }
  };
  Matrix m;
  for (std::size_t i = 0;; ++i) {
    auto a = x.term(i);
    if (!a) break;
    // Semiconvergents (h_{i-2} + t h_{i-1}) / (k_{i-2} + t k_{i-1}), t = 1..a_i;
    // t = a_i is the convergent itself.
    bool over = false;
    for (std::int64_t t = std::min<std::int64_t>(1, *a); t <= *a; ++t) {
      const BigInt q = m.k2 + BigInt(static_cast<long>(t)) * m.k1;
      if (q > qmax) {
        over = true;
        break;
      }
      if (q == 0) continue;
      offer(m.h2 + BigInt(static_cast<long>(t)) * m.h1, q);
    }
    if (over) break;
    m.push(*a);
    if (best_error && best_error->sign() == 0) break;
  }
  return out;
}

std::vector<Rational> farey_enumerate(const Rational& lo, const Rational& hi, std::int64_t qmax) {
  std::vector<Rational> out;
  if (!(lo < hi) || qmax < 1) return out;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const Rational rq(q);
    const BigInt pmin = (lo * rq).ceil();
    const BigInt pmax = (hi * rq).floor();
    for (BigInt p = pmin; p <= pmax; ++p) {
      BigInt g;
      const BigInt bq(static_cast<long>(q));
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), bq.get_mpz_t());
      if (g == 1) out.emplace_back(p, bq);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smallf

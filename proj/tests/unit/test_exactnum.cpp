#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "smallf/contfrac.hpp"
#include "smallf/parallel.hpp"
#include "smallf/primes.hpp"
#include "smallf/rational.hpp"
#include "smallf/sequences.hpp"
#include "smallf/surd.hpp"
#include "smallf/tower.hpp"

using namespace smallf;

namespace {

std::vector<Rational> farey_oracle(const Rational& lo, const Rational& hi, std::int64_t Q) {
  std::set<Rational> s;
  for (std::int64_t q = 1; q <= Q; ++q)
    for (std::int64_t p = 0; p <= q; ++p) {
      Rational r(p, q);
      if (lo <= r && r <= hi) s.insert(r);
    }
  return {s.begin(), s.end()};
}

/// Best approximations of the first kind by scanning every denominator.
std::vector<Rational> best_oracle(const QuadSurd& x, std::int64_t qmax) {
  std::vector<Rational> out;
  std::optional<QuadSurd> best;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const std::int64_t p0 = to_int64((x * QuadSurd(Rational(q))).floor());
    for (std::int64_t p = p0; p <= p0 + 1; ++p) {
      const QuadSurd e = (x - QuadSurd(Rational(p, q))).abs();
      if (!best || e < *best) {
        best = e;
        out.emplace_back(p, q);
      }
    }
  }
  return out;
}

std::vector<std::int64_t> naive_primes(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = std::max<std::int64_t>(lo, 2); v < hi; ++v) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= v && prime; ++d) prime = v % d != 0;
    if (prime) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("exactnum") {
  TEST_CASE("rational parsing is exact") {
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("abc"), Error);
  }

  TEST_CASE("farey enumeration matches the double-loop oracle") {
    const auto f = farey_enumerate(Rational(1, 4), Rational(3, 4), 4);
    const std::vector<Rational> want{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)};
    CHECK(f == want);
    for (std::int64_t Q = 1; Q <= 30; ++Q) CHECK(farey_enumerate(Rational(1, 4), Rational(3, 4), Q) ==
                                                 farey_oracle(Rational(1, 4), Rational(3, 4), Q));
    // The denominator-bounded count grows like Q^2.
    for (std::int64_t Q = 1; Q <= 100; ++Q)
      CHECK(static_cast<double>(farey_enumerate(Rational(1, 4), Rational(3, 4), Q).size()) <= Q * Q / 2.0 + Q);
  }

  TEST_CASE("convergents of periodic expansions") {
    const auto s2 = ContinuedFraction::from_surd(QuadSurd::sqrt2() - QuadSurd(1));
    CHECK(convergents(s2, 12).back() == Rational(5, 12));
    const auto gold = ContinuedFraction::from_surd((QuadSurd::sqrt_of(5) - QuadSurd(1)) / QuadSurd(2));
    CHECK(convergents(gold, 8).back() == Rational(5, 8));
    CHECK(ContinuedFraction::from_rational(Rational(7, 5)).prefix() == std::vector<std::int64_t>{1, 2, 2});
  }

  TEST_CASE("best approximations agree with an exhaustive scan") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> a(-20, 20), b(1, 9), c(1, 12), d(0, 4);
    const std::int64_t rad[] = {2, 3, 5, 7, 11};
    for (int trial = 0; trial < 25; ++trial) {
      QuadSurd x(Rational(a(rng), c(rng)), Rational(b(rng), c(rng)), rad[d(rng)]);
      x -= QuadSurd(Rational(x.floor()));
      CHECK(best_approximations(ContinuedFraction::from_surd(x), 300) == best_oracle(x, 300));
    }
  }

  TEST_CASE("surd parsing and sign") {
    CHECK(QuadSurd::parse("sqrt(2)-1") == QuadSurd::sqrt2() - QuadSurd(1));
    CHECK(QuadSurd::parse(" 1/2*sqrt(5) - 1/2 ") == (QuadSurd::sqrt_of(5) - QuadSurd(1)) / QuadSurd(2));
    CHECK(QuadSurd::parse("3/4") == QuadSurd(Rational(3, 4)));
    CHECK(QuadSurd::parse("-sqrt(8)/2") == -QuadSurd::sqrt2());
    CHECK_THROWS_AS(QuadSurd::parse("sqrt(2"), PreconditionError);
    CHECK_THROWS_AS(QuadSurd::parse("sqrt(-2)"), PreconditionError);
    CHECK_THROWS_AS(QuadSurd::parse(""), PreconditionError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> v(-1000000, 1000000), dd(2, 50);
    for (int i = 0; i < 2000; ++i) {
      const std::int64_t x = v(rng), y = v(rng), d = dd(rng);
      const long double approx = x + y * std::sqrt(static_cast<long double>(d));
      if (std::fabs(approx) > 1e-3L) CHECK(surd_sign(x, y, d) == (approx > 0 ? 1 : -1));
    }
  }

  TEST_CASE("prime windows") {
    CHECK(primes_in_window(10) == std::vector<std::int64_t>{11, 13, 17, 19});
    CHECK(primes_in_window(2) == std::vector<std::int64_t>{2, 3});
    const auto big = primes_in_window(100000);
    CHECK(static_cast<double>(big.size()) >= 100000 / (2 * std::log(100000.0)));
    CHECK(big.size() == 8392);  // pi(2e5) - pi(1e5), frozen from the naive oracle below
    CHECK(big == naive_primes(100000, 200000));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> n(2, 20000);
    PrimeTable t(40000);
    for (int i = 0; i < 50; ++i) {
      const auto k = n(rng);
      CHECK(primes_in_window(k) == naive_primes(k, 2 * k));
      CHECK(t.count(k, 2 * k) == static_cast<std::int64_t>(naive_primes(k, 2 * k).size()));
    }
    CHECK(prime_window_threshold(PrimeTable(20000), 10000) == kPrimeWindowThreshold);
  }

  TEST_CASE("tower scalars track ordering and logs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<long double> u(0, 700);
    for (int i = 0; i < 500; ++i) {
      const long double x = std::exp(u(rng)), y = std::exp(u(rng));
      const auto tx = TowerScalar::from_real(x), ty = TowerScalar::from_real(y);
      CHECK((tx < ty) == (x < y));
      CHECK(tower_mul(tx, ty).log().to_long_double() == doctest::Approx(static_cast<double>(std::log(x) + std::log(y))));
      CHECK(tower_log(tower_exp(tx)).to_long_double() == doctest::Approx(static_cast<double>(x)));
    }
    const auto big = tower_exp(tower_exp(TowerScalar::from_real(1000)));
    CHECK(big.level() >= 2);
    CHECK(TowerScalar::from_real(1e300L) < big);
    CHECK(tower_add(big, TowerScalar::from_real(1)) == big);
    CHECK_THROWS_AS(TowerScalar::from_real(0.5L).log(), DomainError);
  }

  TEST_CASE("sequence generators") {
    const auto lemma = generate_sequence(SequenceKind::Lemma31, 2, 10, 3);
    CHECK(lemma[0].log_value.to_long_double() == doctest::Approx(50.0));
    const auto ex = generate_sequence(SequenceKind::Ex48, 2, 10, 6);
    CHECK(ex[0].value.to_long_double() == doctest::Approx(std::exp(10.0)));
    for (std::size_t k = 1; k < ex.size(); ++k) CHECK(ex[k].flag_b);
    CHECK(ex.size() == 6);
  }

  TEST_CASE("ex48 linear forms cancel equal towers exactly") {
    const auto P = ex48_powers(2, 10, 6);
    CHECK(P[0].to_long_double() == doctest::Approx(10.0));
    // ln P_j = (2/r) j P_{j-1} with r = 2.
    CHECK(P[2].log().to_long_double() == doctest::Approx(2 * P[1].to_long_double()));
    const auto f = Ex48Form::power(5, 3) + Ex48Form::constant(2) - Ex48Form::power(5, 3);
    CHECK(f.lead() == -1);
    CHECK(f.eval(P).to_long_double() == doctest::Approx(2.0));
    const auto g = Ex48Form::power(5, 1) - Ex48Form::power(4, 7);
    CHECK(g.eval(P).sign() == 1);
    CHECK(g.eval(P).resolved());
  }

  TEST_CASE("parallel map keeps order and the lowest failing index") {
    for (int t : {1, 2, 8}) {
      const auto v = parallel_map(1000, [](std::size_t i) { return i * i; }, t);
      for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
      try {
        parallel_map(
            100,
            [](std::size_t i) -> int {
              if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
              return 0;
            },
            t);
        FAIL("expected a throw");
      } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
      }
    }
  }
}

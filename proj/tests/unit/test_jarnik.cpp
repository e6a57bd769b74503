#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "smallf/jarnik.hpp"

using namespace smallf;

namespace {

Rational gap_between(const Interval& a, const Interval& b) { return a.hi < b.lo ? b.lo - a.hi : a.lo - b.hi; }

// Exhaustive: best |x - p/q| over q <= qmax, p in 0..q.
QuadSurd best_error(const QuadSurd& x, std::int64_t qmax) {
  QuadSurd best(1);
  for (std::int64_t q = 1; q <= qmax; ++q)
    for (std::int64_t p = 0; p <= q; ++p) {
      const auto e = (x - QuadSurd(Rational(p, q))).abs();
      if (e < best) best = e;
    }
  return best;
}

}  // namespace

TEST_SUITE("jarnik") {
  TEST_CASE("ApproxFunction parsing") {
    CHECK(ApproxFunction::parse("x^3").kind() == ApproxFunction::Kind::Power);
    CHECK(ApproxFunction::parse("x^2.5").param() == doctest::Approx(2.5));
    CHECK(ApproxFunction::parse("exppow:2").kind() == ApproxFunction::Kind::ExpPow);
    CHECK(ApproxFunction::parse("g_r:2").param() == doctest::Approx(2));
    CHECK_THROWS_AS(ApproxFunction::parse("x^2"), PreconditionError);
    CHECK_THROWS_AS(ApproxFunction::parse("sin"), PreconditionError);
    const auto g = ApproxFunction::power(3);
    CHECK(g.ceil_at(7) == BigInt(343));
    CHECK(g.inverse(g.eval(5)) == doctest::Approx(5));
  }

  TEST_CASE("G_q") {
    const auto g = ApproxFunction::power(3);
    const auto G3 = build_Gq(3, g);
    REQUIRE(G3.size() == 4);
    CHECK(G3[1] == Interval(Rational(1, 3) - Rational(1, 27), Rational(1, 3) + Rational(1, 27)));
    CHECK(G3[0] == Interval(Rational(0), Rational(1, 27)));
    for (std::int64_t q = 3; q <= 30; ++q)
      CHECK(build_Gq(q, g).total_length() == Rational(2 * q) / Rational(q * q * q));
    CHECK(build_Gq_prime(3, g).size() == 2);
    CHECK_THROWS_AS(build_Gq(1, g), PreconditionError);
  }

  TEST_CASE("H_16 separation") {
    const auto g = ApproxFunction::power(3);
    const auto H = build_Hn(16, g);
    CHECK(H.primes == std::vector<std::int64_t>{17, 19, 23, 29, 31});
    CHECK(H.set.size() == 114);
    const auto rep = min_separation(H, g);
    CHECK(rep.pass);
    REQUIRE(rep.min_gap);
    REQUIRE(rep.min_center);
    CHECK(*rep.min_gap >= Rational(1, 2048));
    CHECK(*rep.min_center == Rational(1, 29 * 31));

    Rational oracle_gap(1), oracle_center(1);
    for (std::size_t i = 0; i < H.set.size(); ++i)
      for (std::size_t j = i + 1; j < H.set.size(); ++j) {
        if (H.prime[i] == H.prime[j]) continue;
        oracle_gap = std::min(oracle_gap, gap_between(H.set[i], H.set[j]));
        oracle_center = std::min(oracle_center, (H.set[i].center() - H.set[j].center()).abs());
      }
    CHECK(*rep.min_gap == oracle_gap);
    CHECK(*rep.min_center == oracle_center);
    CHECK_THROWS_AS(build_Hn(15, g), PreconditionError);
  }

  TEST_CASE("children of an interval") {
    const auto g = ApproxFunction::power(3);
    const Interval I(Rational(1, 4), Rational(3, 4));
    const auto c = count_children(I, 17, g);
    CHECK(c.count >= 3);
    CHECK(c.pass);
    std::int64_t brute = 0;
    for (const auto& J : build_Gq_prime(17, g)) brute += I.contains(J) ? 1 : 0;
    CHECK(c.count == brute);
    CHECK_THROWS_AS(count_children(Interval(Rational(0), Rational(1, 10)), 17, g), PreconditionError);
  }

  TEST_CASE("witness search") {
    const auto x = QuadSurd::sqrt2() - QuadSurd(1);
    const auto at12 = witness_search(x, [](double t) { return t; }, 12);
    REQUIRE(at12.witness);
    CHECK(at12.witness->p == 5);
    CHECK(at12.witness->q == 12);
    CHECK(at12.accepted);
    const auto at5 = witness_search(x, [](double t) { return t; }, 5);
    REQUIRE(at5.witness);
    CHECK(at5.witness->p == 2);
    CHECK(at5.witness->q == 5);
    CHECK(at5.accepted);
    const auto rat = witness_search(QuadSurd(Rational(3, 7)), 50, Rational(1, 100));
    CHECK(rat.rational_input);
    CHECK(rat.witness->error == QuadSurd(0));
  }

  TEST_CASE("property: witness error equals the exhaustive minimum") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::int64_t> a(-20, 20), b(1, 20), c(1, 30), d(0, 3), qm(1, 40);
    const std::int64_t rad[] = {2, 3, 5, 7};
    for (int i = 0; i < 40; ++i) {
      QuadSurd x(Rational(a(rng), c(rng)), Rational(b(rng), c(rng)), rad[d(rng)]);
      x -= QuadSurd(Rational(x.floor()));
      const auto qmax = qm(rng);
      const auto w = witness_search(x, qmax, Rational(1));
      REQUIRE(w.witness);
      CHECK(w.witness->q <= qmax);
      CHECK(w.witness->error == best_error(x, qmax));
    }
  }

  TEST_CASE("one-level construction and inclusion") {
    const auto g = ApproxFunction::power(3);
    const auto L = build_levels(g, {20}, 1);
    REQUIRE(L.depth() == 1);
    REQUIRE(L.levels[1].E);
    const auto inc = verify_inclusion(L, 100, 0);
    CHECK(inc.samples == 100);
    CHECK(inc.failures == 0);
    CHECK(inc.norm_failures == 0);
    for (const auto& x : inc.points) CHECK(L.levels[1].E->contains(x));
    const auto fam = build_nested(L.schedule(), L.generator());
    CHECK(fam.levels[1].size() == L.levels[1].E->size());
  }

  TEST_CASE("inadmissible sequences name the failing condition") {
    const auto g = ApproxFunction::power(3);
    try {
      build_levels(g, {20, 1000}, 2);
      FAIL("expected a throw");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("(A)") != std::string::npos);
    }
  }

  TEST_CASE("critlow along the tower sequence") {
    for (double theta : {0.5, 1.0, 1.5}) CHECK(critlow_ex48(2, DimensionFunction(0, theta), 10, 10).liminf == LiminfClass::Positive);
    CHECK(critlow_ex48(2, DimensionFunction(0, 2), 10, 10).liminf == LiminfClass::Zero);
    CHECK_THROWS_AS(critlow_ex48(2, DimensionFunction(0, 2.5), 10, 10), PreconditionError);
  }
}

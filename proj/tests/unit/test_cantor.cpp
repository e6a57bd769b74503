#include <doctest.h>

#include <cmath>
#include <random>

#include "smallf/cantor.hpp"

using namespace smallf;

namespace {
const double kS = std::log(2.0) / std::log(3.0);
}

TEST_SUITE("cantor") {
  TEST_CASE("middle thirds D_k is constant") {
    const auto dk = dk_sequence(CantorSchedule::middle_thirds(40), DimensionFunction(kS, 0));
    for (double v : dk.log_d) CHECK(std::exp(v) == doctest::Approx(std::pow(2.0, kS - 1)).epsilon(1e-12));
    CHECK(dk.liminf == LiminfClass::Positive);
    CHECK(std::pow(2.0, kS - 1) == doctest::Approx(0.7743).epsilon(1e-4));
  }

  TEST_CASE("schedule validation and JSON") {
    const auto s = CantorSchedule::from_json(R"({"m": [2, 3], "eps": ["1/3", 0.01]})");
    CHECK(s.levels() == 2);
    CHECK(s.eps[1] == Rational(1, 100));
    CHECK(CantorSchedule::from_json(s.json()).m == s.m);
    CHECK_THROWS_AS(CantorSchedule({2, 2}, {Rational(1, 9), Rational(1, 3)}), PreconditionError);
    CHECK_THROWS_AS(CantorSchedule({0}, {Rational(1, 3)}), PreconditionError);
  }

  TEST_CASE("dk_sequence rejects non-concave h") {
    CHECK_THROWS_AS(dk_sequence(CantorSchedule::middle_thirds(5), DimensionFunction(2, 0)), PreconditionError);
  }

  TEST_CASE("nested middle-thirds construction") {
    const auto s = CantorSchedule::middle_thirds(8);
    const auto f = build_nested(s, middle_thirds_generator());
    CHECK(f.levels.back().size() == 256);
    CHECK(f.levels.back().min_gap() >= pow(Rational(1, 3), 8));
  }

  TEST_CASE("hypothesis failures name the violated condition") {
    try {
      build_nested(CantorSchedule({3}, {Rational(1, 3)}), middle_thirds_generator());
      FAIL("expected a throw");
    } catch (const CantorHypothesisError& e) {
      CHECK(e.kind() == CantorHypothesisError::Kind::Children);
    }
    try {
      build_nested(CantorSchedule({2}, {Rational(1, 2)}), middle_thirds_generator());
      FAIL("expected a throw");
    } catch (const CantorHypothesisError& e) {
      CHECK(e.kind() == CantorHypothesisError::Kind::Gap);
    }
  }

  TEST_CASE("mass distribution is exact and additive") {
    const auto s = CantorSchedule::middle_thirds(6);
    const auto d = MassDistribution::from_family(build_nested(s, middle_thirds_generator()), s);
    CHECK(mass_of_interval(d, Interval(Rational(0), Rational(1))) == Rational(1));
    for (int k = 1; k <= 6; ++k)
      for (const auto& I : d.levels[static_cast<std::size_t>(k)])
        CHECK(mass_of_interval(d, I) == Rational(1, 1LL << k));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long long> pick(0, 3000);
    for (int i = 0; i < 200; ++i) {
      long long a = pick(rng), b = pick(rng), c = pick(rng);
      if (a > b) std::swap(a, b);
      c = a + (b - a) / 2;
      const Interval whole(Rational(a, 3000), Rational(b, 3000));
      const Interval left(Rational(a, 3000), Rational(c, 3000)), right(Rational(c, 3000), Rational(b, 3000));
      CHECK(mass_of_interval(d, whole) == mass_of_interval(d, left) + mass_of_interval(d, right));
    }
  }

  TEST_CASE("sampled intervals respect the mass bound") {
    const auto s = CantorSchedule::middle_thirds(8);
    const auto d = MassDistribution::from_family(build_nested(s, middle_thirds_generator()), s);
    const DimensionFunction h(kS, 0);
    for (const auto& u : sample_intervals(d, h, 3000, 17)) {
      const auto b = mass_bound(d, u);
      REQUIRE(b);
      CHECK(mass_of_interval(d, u) <= *b);
    }
  }

  TEST_CASE("mass distribution principle audit") {
    const auto s = CantorSchedule::middle_thirds(10);
    const auto d = MassDistribution::from_family(build_nested(s, middle_thirds_generator()), s);
    const auto ok = verify_mdp(d, DimensionFunction(kS, 0), 2000);
    CHECK_FALSE(ok.unbounded);
    CHECK(ok.max_ratio < 2);
    CHECK(ok.max_ratio >= 1 / std::pow(2.0, kS - 1) / ok.doubling_constant);
    const auto bad = verify_mdp(d, DimensionFunction(0.9, 0), 2000);
    CHECK(bad.unbounded);
  }

  TEST_CASE("classical dimension estimates") {
    CHECK(classical_dim_estimate(CantorSchedule::middle_thirds(4000)) == doctest::Approx(kS).epsilon(1e-3));
    std::vector<std::int64_t> m(2000, 2);
    std::vector<Rational> eps;
    for (int k = 1; k <= 2000; ++k) eps.push_back(pow(Rational(1, 4), static_cast<unsigned>(k)));
    CHECK(classical_dim_estimate(CantorSchedule(m, eps)) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK_THROWS_AS(classical_dim_estimate(CantorSchedule::middle_thirds(1)), PreconditionError);
  }

  TEST_CASE("tower-sequence schedule classification") {
    for (double theta : {0.5, 1.0, 1.5}) {
      const auto d = ex48_dk_sequence(2, 10, DimensionFunction(0, theta), 10);
      CHECK(d.liminf == LiminfClass::Positive);
      for (const auto& v : d.log_d) CHECK(v.resolved());
    }
    const auto zero = ex48_dk_sequence(2, 10, DimensionFunction(0, 2), 10);
    CHECK(zero.liminf == LiminfClass::Zero);
    CHECK(zero.clamped[0]);
    CHECK_FALSE(zero.clamped[1]);
  }
}

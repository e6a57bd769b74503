#include <doctest.h>

#include <cmath>
#include <random>

#include "smallf/dimfn.hpp"
#include "smallf/rational.hpp"

using namespace smallf;

TEST_SUITE("dimfn") {
  TEST_CASE("parse accepts the documented forms") {
    CHECK(DimensionFunction::parse("x^0.5") == DimensionFunction(0.5, 0));
    CHECK(DimensionFunction::parse("log^-2") == DimensionFunction(0, 2));
    CHECK(DimensionFunction::parse("x^2*log^-3") == DimensionFunction(2, 3));
    CHECK(DimensionFunction::parse("x") == DimensionFunction(1, 0));
    CHECK(DimensionFunction::parse("1/log") == DimensionFunction(0, 1));
    CHECK(DimensionFunction::parse(R"({"a": 0.25, "b": -1})") == DimensionFunction(0.25, -1));
    CHECK_THROWS(DimensionFunction::parse("sin(x)"));
  }

  TEST_CASE("evaluation agrees with the closed form and its log") {
    const DimensionFunction h(0.5, 2);
    for (double x : {1e-3, 1e-6, 1e-12}) {
      const double L = std::log(1 / x);
      CHECK(h.eval(x) == doctest::Approx(std::sqrt(x) / (L * L)));
      CHECK(h.log_eval_at(L) == doctest::Approx(std::log(h.eval(x))));
    }
    // Far below double range only the log form is usable.
    CHECK(DimensionFunction(0, 1).log_eval_at(1e6) == doctest::Approx(-std::log(1e6)));
  }

  TEST_CASE("zero-dimensional functions precede every power") {
    CHECK(compare(DimensionFunction(0, 1), DimensionFunction(0.3, 0)) == OrderRelation::Less);
    CHECK(compare(DimensionFunction(0.3, 0), DimensionFunction(0, 1)) == OrderRelation::Greater);
    CHECK(compare(DimensionFunction(0.5, 1), DimensionFunction(0.5, 1)) == OrderRelation::Equivalent);
    CHECK(compare(DimensionFunction(0.5, 1), DimensionFunction(0.5, 2)) == OrderRelation::Less);
  }

  TEST_CASE("gap of two log functions") {
    for (double theta : {0.5, 1.0, 1.5}) {
      const auto d = gap(DimensionFunction(0, theta), DimensionFunction(0, 2));
      CHECK(d.a() == 0);
      CHECK(d.b() == doctest::Approx(2 - theta));
    }
    CHECK_THROWS_AS(gap(DimensionFunction(0, 2), DimensionFunction(0, 1)), PreconditionError);
  }

  TEST_CASE("inverse against bisection on the forward map") {
    const DimensionFunction h(1, 1);
    double lo = 1e-300, hi = h.domain_max();
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      (h.eval(mid) < 0.01 ? lo : hi) = mid;
    }
    const double x = inverse(h, 0.01);
    CHECK(x == doctest::Approx(lo).epsilon(1e-9));
    CHECK(h.eval(x) == doctest::Approx(0.01).epsilon(1e-12));
  }

  TEST_CASE("cover cost with a log function") {
    CHECK(hausdorff_cost(256, std::ldexp(1.0, -768), DimensionFunction(0, 1)) ==
          doctest::Approx(256 / (768 * std::log(2.0))));
  }

  TEST_CASE("domains and concavity") {
    CHECK(std::isinf(DimensionFunction(0.5, 0).domain_max()));
    CHECK(DimensionFunction(0, 1).domain_max() == doctest::Approx(std::exp(-1.0)));
    CHECK(DimensionFunction(0.5, 0).is_concave_on(1.0));
    CHECK_FALSE(DimensionFunction(2, 0).is_concave_on(0.5));
    // 1/log(1/x) bends the wrong way on (e^-2, e^-1].
    CHECK_FALSE(DimensionFunction(0, 1).is_concave());
    CHECK(DimensionFunction(0, 1).is_concave_on(std::exp(-2.0)));
  }

  TEST_CASE("property: non-decreasing, and concave where claimed") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ua(0.05, 1.0), ub(-3, 3), ut(0, 1);
    for (int i = 0; i < 300; ++i) {
      const DimensionFunction h(ua(rng), ub(rng));
      const double top = std::min(0.5, h.domain_max());
      const double L0 = -std::log(top);
      double prev = 0;
      for (int k = 40; k >= 0; --k) {
        const double L = L0 + 30.0 * k / 40;
        const double v = h.log_eval_at(L);
        if (k < 40) CHECK(v >= prev - 1e-12);
        prev = v;
      }
      if (h.is_concave_on(top)) {
        for (int k = 0; k < 20; ++k) {
          const double x = top * (0.05 + 0.9 * ut(rng)), step = x * 1e-3;
          const double d2 = h.eval(x + step) - 2 * h.eval(x) + h.eval(x - step);
          CHECK(d2 <= 1e-9 * h.eval(x));
        }
      }
    }
  }
}

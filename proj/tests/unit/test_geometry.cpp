#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "smallf/geometry.hpp"

using namespace smallf;

namespace {

QuadSurd gap_scan(const std::vector<QuadSurd>& v) {
  QuadSurd best(0);
  const QuadSurd zero(0), one(1), half(Rational(1, 2));
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const QuadSurd lo = std::max(zero, v[i]), hi = std::min(one, v[i + 1]);
    if (hi < lo) continue;
    const QuadSurd x = std::clamp((v[i] + v[i + 1]) * half, lo, hi);
    best = std::max(best, std::min(x - v[i], v[i + 1] - x));
  }
  if (v.back() < one) best = std::max(best, one - v.back());
  return best;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("discrepancy values for tiny n") {
    const auto v2 = discrepancy_values(2);
    const QuadSurd r2 = QuadSurd::sqrt2();
    const std::vector<QuadSurd> want{QuadSurd(Rational(-1, 2)), QuadSurd(0), (r2 - QuadSurd(1)) / QuadSurd(2),
                                     r2 / QuadSurd(2)};
    CHECK(v2 == want);
    const auto v3 = discrepancy_values(3);
    CHECK(v3.size() == 9);
    CHECK(v3.front() == QuadSurd(Rational(-2, 3)));
    CHECK(v3.back() == QuadSurd(2) * r2 / QuadSurd(3));
    CHECK(std::is_sorted(v3.begin(), v3.end()));
  }

  TEST_CASE("covering radius equals an exhaustive gap scan") {
    CHECK(covering_radius(2).rho == QuadSurd(1) - QuadSurd::sqrt2() / QuadSurd(2));
    for (int n = 1; n <= 90; ++n) {
      const auto c = covering_radius(n);
      CHECK(c.rho == gap_scan(discrepancy_values(n)));
      CHECK(distance_to_values(n, c.witness) == c.rho);
    }
  }

  TEST_CASE("discrepancy threshold") {
    const auto c = covering_radius(100);
    CHECK(c.bound == doctest::Approx(std::log(100.0) / 1e4));
    CHECK(c.pass);
    const auto scan = scan_discrepancy(2000);
    // Measured; every failing n lies inside the oracle-checked range above.
    CHECK(scan.threshold == 15);
    CHECK(scan.max_ratio < 1);
  }

  TEST_CASE("G_n tubes") {
    const auto g3 = build_Gn(3);
    CHECK(g3.tubes.size() == 9);
    std::vector<double> slopes, want;
    for (const auto& t : g3.tubes) slopes.push_back(t.m);
    for (const auto& v : discrepancy_values(3)) want.push_back(v.to_double());
    std::sort(slopes.begin(), slopes.end());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(slopes[i] == doctest::Approx(want[i]));
    for (int n : {3, 10, 40}) {
      const auto g = build_Gn(n);
      double area = 0;
      for (const auto& t : g.tubes) area += 2 * t.delta;
      CHECK(area == doctest::Approx(2 * std::log(static_cast<double>(n))));
    }
  }

  TEST_CASE("G-set property from the threshold on, with explicit witnesses") {
    for (int n : {15, 16, 50, 200}) {
      const auto fam = build_Gn(n);
      const auto rep = verify_gset(fam, 2000);
      CHECK(rep.all_covered);
      for (const auto& w : rep.witnesses) {
        REQUIRE(w.tube);
        const auto& t = fam.tubes[*w.tube];
        // The segment y = m x + c stays inside the tube at both ends.
        CHECK(std::fabs(w.intercept - t.b) <= t.delta + 1e-12);
        CHECK(std::fabs(w.slope + w.intercept - t.m - t.b) <= t.delta + 1e-12);
      }
    }
    CHECK(verify_gset(build_Gn(15), 1).witnesses.size() == 1);
  }

  TEST_CASE("affine images compose widths") {
    const auto g2 = build_Gn(2);
    const AffineMap map{0.25, std::log(2.0) / 4, 0.125};
    const auto img = apply_affine(map, g2);
    REQUIRE(img.tubes.size() == 4);
    CHECK(img.delta == doctest::Approx(std::pow(std::log(2.0) / 4, 2)));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(img.tubes[i].m == doctest::Approx(map.m + map.delta * g2.tubes[i].m));
      CHECK(img.tubes[i].b == doctest::Approx(map.b + map.delta * g2.tubes[i].b));
    }
  }
}

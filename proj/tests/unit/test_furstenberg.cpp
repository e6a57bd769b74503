#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "smallf/contfrac.hpp"
#include "smallf/furstenberg.hpp"

using namespace smallf;

namespace {

ConstructionParams alpha_mode(const Rational& a) {
  ConstructionParams p;
  p.alpha = a;
  return p;
}

std::set<Rational> st_oracle(std::int64_t n, const Rational& u) {
  const std::int64_t a = to_int64(u.num()), q = to_int64(u.den());
  std::set<Rational> s;
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t k = 0; k < n; ++k) s.insert(Rational(a * j + k * q, n * q));
  return s;
}

}  // namespace

TEST_SUITE("furstenberg") {
  TEST_CASE("phi and its inverse") {
    CHECK(phi_inv(Rational(1, 2)) == QuadSurd(2) - QuadSurd::sqrt2());
    CHECK(phi_inv(Rational(1, 4)) == QuadSurd(4) / (QuadSurd(4) + QuadSurd::sqrt2()));
    CHECK(phi_inv(Rational(3, 4)) == QuadSurd(4) / (QuadSurd(4) + QuadSurd(3) * QuadSurd::sqrt2()));
    for (const auto& u : farey_enumerate(Rational(1, 4), Rational(3, 4), 12)) CHECK(phi(phi_inv(u)) == QuadSurd(u));
    CHECK_THROWS_AS(phi_inv(Rational(1, 5)), DomainError);
    const auto lip = phi_lipschitz(1000);
    CHECK(lip.min_ratio > 0);
    CHECK(lip.max_ratio < 10);
    CHECK(lip.min_ratio < lip.max_ratio);
  }

  TEST_CASE("Gamma_n in both modes") {
    CHECK(build_Gamma(4, alpha_mode(Rational(1))).size() == 5);
    ConstructionParams lp;
    lp.mode = DenominatorMode::LogPow;
    lp.r = 2;
    CHECK(denominator_bound(4, lp) == 2);
    CHECK(build_Gamma(4, lp) == std::vector<Rational>{Rational(1, 2)});
    for (std::int64_t n = 4; n <= 4000; n += 37) {
      const double f = 2 * std::log(static_cast<double>(n));
      CHECK(static_cast<double>(build_Gamma(n, lp).size()) <= f * f);
    }
    CHECK(denominator_bound(1000, alpha_mode(Rational(1, 3))) == 10);
    CHECK(denominator_bound(999, alpha_mode(Rational(1, 3))) == 9);
  }

  TEST_CASE("S(t) examples") {
    const auto s4 = compute_St(4, Rational(1, 2), alpha_mode(Rational(1, 2)), true);
    CHECK(s4.count == 10);
    for (std::size_t i = 0; i < s4.values.size(); ++i) CHECK(s4.values[i] == Rational(static_cast<long long>(i), 8));
    CHECK(compute_St(2, Rational(1, 2), alpha_mode(Rational(1)), true).count == 4);
    CHECK_THROWS_AS(compute_St(4, Rational(1, 5), alpha_mode(Rational(1))), PreconditionError);
  }

  TEST_CASE("property: closed-form |S(t)| equals enumeration") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::int64_t> pick_n(2, 40);
    for (int i = 0; i < 60; ++i) {
      const auto n = pick_n(rng);
      const auto p = alpha_mode(Rational(1));
      const auto g = build_Gamma(n, p);
      std::uniform_int_distribution<std::size_t> pick_u(0, g.size() - 1);
      const auto& u = g[pick_u(rng)];
      const auto res = compute_St(n, u, p, true);
      const auto oracle = st_oracle(n, u);
      CHECK(res.count == static_cast<std::int64_t>(oracle.size()));
      CHECK(std::set<Rational>(res.values.begin(), res.values.end()) == oracle);
      CHECK(static_cast<double>(res.count) <= 2.0 * std::pow(static_cast<double>(n), 2));
    }
  }

  TEST_CASE("union counts") {
    const auto p1 = alpha_mode(Rational(1));
    std::int64_t N = 0;
    for (const auto& u : build_Gamma(4, p1)) N += static_cast<std::int64_t>(st_oracle(4, u).size());
    CHECK(union_St_count(4, p1) == N);
    CHECK(N <= 80);
    const auto half = alpha_mode(Rational(1, 2));
    for (std::int64_t n = 2; n <= 60; ++n)
      CHECK(static_cast<double>(union_St_count(n, half)) / std::pow(static_cast<double>(n), 2.5) <= 4);
  }

  TEST_CASE("logpow cover count against n ln(n)^(3r/2)") {
    ConstructionParams lp;
    lp.mode = DenominatorMode::LogPow;
    lp.r = 2;
    const double ratio = static_cast<double>(union_St_count(16, lp)) / (16 * std::pow(std::log(16.0), 3));
    CHECK(ratio > 0);
    CHECK(ratio <= 8);
  }

  TEST_CASE("rectangle cover audit") {
    const auto p = alpha_mode(Rational(1, 2));
    for (std::int64_t n : {8, 32, 128}) {
      const auto rep = cover_Lambda(n, p, DimensionFunction(1.25, 0), 2000, 4);
      CHECK(rep.audit_failures == 0);
      CHECK(rep.count == union_St_count(n, p));
      CHECK(rep.diameter_constant > 2);
    }
  }

  TEST_CASE("desk iteration counts") {
    ConstructionParams p = alpha_mode(Rational(1));
    p.desk_sequence = {4, 9};
    p.levels = 2;
    const auto st = iterate_construction(p);
    REQUIRE(st.size() == 3);
    CHECK(st[1].M.to_long_double() == doctest::Approx(16));
    CHECK(st[2].M.to_long_double() == doctest::Approx(1296));
    CHECK(st[2].delta == doctest::Approx(std::log(4.0) / 16 * std::log(9.0) / 81));
    REQUIRE(st[2].family);
    CHECK(st[2].family->tubes.size() == 1296);
  }

  TEST_CASE("tower iteration stays admissible") {
    ConstructionParams lp;
    lp.mode = DenominatorMode::LogPow;
    lp.r = 2;
    lp.levels = 8;
    for (const auto& s : iterate_construction(lp)) CHECK(s.next_admissible);
    ConstructionParams ap = alpha_mode(Rational(1, 2));
    ap.levels = 6;
    for (const auto& s : iterate_construction(ap)) CHECK(s.next_admissible);
  }

  TEST_CASE("h-cost trends") {
    const auto p = alpha_mode(Rational(1));
    CHECK(hcost_sequence(p, 3, 10).trend == Trend::ToZero);
    CHECK(hcost_sequence(p, 1, 10).trend == Trend::ToInfinity);
    const auto b = hcost_sequence(p, 2, 10);
    CHECK(b.boundary);
    CHECK(b.critical == doctest::Approx(2));
  }

  TEST_CASE("box-dimension ratios") {
    const long double L = 1e6L;
    const auto terms = boxdim_ratio_sequence(2, {TowerScalar::exp_of(TowerScalar::from_real(L))});
    const double want = static_cast<double>((4 * std::log(L) + L) / (2 * L - std::log(L)));
    CHECK(terms[0].ratio == doctest::Approx(want).epsilon(1e-12));
    CHECK(terms[0].ratio == doctest::Approx(0.5000311).epsilon(1e-7));

    ConstructionParams lp;
    lp.mode = DenominatorMode::LogPow;
    lp.r = 2;
    const auto seq = boxdim_ratio_sequence(2, default_tower_sequence(lp, 8));
    for (std::size_t j = 1; j < seq.size(); ++j) CHECK(seq[j].log_excess < seq[j - 1].log_excess);
  }
}

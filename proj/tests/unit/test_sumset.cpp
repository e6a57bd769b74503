#include <doctest.h>

#include <cmath>
#include <set>

#include "smallf/rational.hpp"
#include "smallf/sumset.hpp"

using namespace smallf;

namespace {

// Digit position j (1-based, most significant first) lies in block k with
// m_k < j <= m_{k+1}, m_0 = 0; E zeroes even k, F odd k.
bool oracle_free(const std::vector<std::int64_t>& m, bool zero_even, std::int64_t j) {
  for (std::size_t k = 0; k < m.size(); ++k)
    if (j <= m[k]) return (k % 2 == 0) != zero_even;
  return true;
}

std::vector<std::uint64_t> oracle_truncate(int base, int depth, const std::vector<std::int64_t>& m, bool zero_even,
                                           const std::set<int>& digits) {
  std::vector<std::uint64_t> out;
  std::uint64_t total = 1;
  for (int i = 0; i < depth; ++i) total *= static_cast<std::uint64_t>(base);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t v = t;
    bool ok = true;
    for (int j = depth; j >= 1 && ok; --j) {
      const int d = static_cast<int>(v % static_cast<std::uint64_t>(base));
      v /= static_cast<std::uint64_t>(base);
      ok = oracle_free(m, zero_even, j) ? digits.count(d) > 0 : d == 0;
    }
    if (ok) out.push_back(t);
  }
  return out;
}

std::vector<std::uint64_t> oracle_missing(const TruncatedSet& E, const TruncatedSet& F) {
  std::uint64_t total = 1;
  for (int i = 0; i < E.depth; ++i) total *= static_cast<std::uint64_t>(E.base);
  std::set<std::uint64_t> hit;
  for (auto e : E.residues)
    for (auto f : F.residues) hit.insert(e + f);
  std::vector<std::uint64_t> miss;
  for (std::uint64_t t = 0; t < total; ++t)
    if (!hit.count(t)) miss.push_back(t);
  return miss;
}

}  // namespace

TEST_SUITE("sumset") {
  TEST_CASE("truncation matches digit enumeration") {
    const std::vector<std::int64_t> m{1, 2, 8};
    const DigitBlockSet E(2, m, Parity::ZeroOnEven), F(2, m, Parity::ZeroOnOdd);
    CHECK(truncate(E, 8).residues == oracle_truncate(2, 8, m, true, {0, 1}));
    CHECK(truncate(F, 8).residues == oracle_truncate(2, 8, m, false, {0, 1}));
    CHECK(truncate(E, 8).residues.size() == 2);
    CHECK(ell_alternating(m, 2) == 1);
    const auto U = DigitBlockSet::uniform(4, {0, 1});
    CHECK(truncate(U, 5).residues == oracle_truncate(4, 5, {}, true, {0, 1}));
    CHECK(U.free_positions(7) == 7);
    CHECK(parse_parity(to_string(Parity::ZeroOnOdd)) == Parity::ZeroOnOdd);
  }

  TEST_CASE("coverage agrees with a brute-force sum") {
    const auto E = truncate(DigitBlockSet::uniform(4, {0, 1}), 5);
    const auto F = truncate(DigitBlockSet::uniform(4, {0, 2}), 5);
    const auto ok = sumset_covers(E, F);
    CHECK(ok.covered);
    CHECK(ok.missing.empty());
    CHECK(ok.targets == 1024);
    const auto bad = sumset_covers(E, E);
    CHECK_FALSE(bad.covered);
    CHECK(bad.missing == oracle_missing(E, E));
    const std::vector<std::int64_t> m{1, 2, 8};
    const auto E2 = truncate(DigitBlockSet(2, m, Parity::ZeroOnEven), 8);
    const auto F2 = truncate(DigitBlockSet(2, m, Parity::ZeroOnOdd), 8);
    CHECK(sumset_covers(E2, F2).covered);
    CHECK(oracle_missing(E2, F2).empty());
  }

  TEST_CASE("block schedules") {
    CHECK(concrete_schedule(4, 1) == std::vector<std::int64_t>{1, 2, 8, 768});
    const auto h = DimensionFunction::parse("log^-1");
    CHECK(schedule_from_h(h, 4, 1) == std::vector<std::int64_t>{1, 3, 24, 72613219});
    CHECK_THROWS_AS(schedule_from_h(h, 5, 1), DomainError);
    CHECK_THROWS_AS(concrete_schedule(5, 1), DomainError);
  }

  TEST_CASE("h-costs of the concrete blocks") {
    const auto h = DimensionFunction::parse("log^-1");
    const auto m = concrete_schedule(4, 1);
    const DigitBlockSet E(2, m, Parity::ZeroOnEven), F(2, m, Parity::ZeroOnOdd);
    // free digits up to m_3 = 8 for E: position 2 only; up to 768 for F: 1 and 3..8.
    CHECK(hcost_blockset(E, h, 2) == doctest::Approx(2 / (8 * std::log(2.0))));
    CHECK(hcost_blockset(F, h, 3) == doctest::Approx(128 / (768 * std::log(2.0))));
    CHECK(hcost_blockset(E, h, 2) == doctest::Approx(0.3607).epsilon(1e-4));
    CHECK(hcost_blockset(F, h, 3) == doctest::Approx(0.2405).epsilon(1e-4));
    CHECK_THROWS_AS(hcost_blockset(E, h, 4), PreconditionError);
  }

  TEST_CASE("box counts of the base-4 set") {
    const auto T = truncate(DigitBlockSet::uniform(4, {0, 1}), 10);
    for (int k = 1; k <= 10; ++k) {
      const auto b = box_count(T, k);
      CHECK(b.count == (std::uint64_t{1} << k));
      CHECK(b.slope == doctest::Approx(0.5).epsilon(1e-12));
    }
  }

  TEST_CASE("directions from E + F") {
    const auto E = truncate(DigitBlockSet::uniform(4, {0, 1}), 6);
    const auto F = truncate(DigitBlockSet::uniform(4, {0, 2}), 6);
    const auto rep = direction_coverage(E, F, 65);
    CHECK(rep.pass);
    CHECK(rep.pairs.size() == 65);
    CHECK(rep.bound == doctest::Approx(std::atan(std::pow(4.0, -6))));
    CHECK(rep.max_angle_error <= rep.bound);
    for (const auto& p : rep.pairs) CHECK(std::fabs(std::atan(p.x + p.y) - p.theta) <= rep.bound);
    CHECK_THROWS_AS(direction_coverage(E, E, 9), PreconditionError);
  }
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smallf/cantor.hpp"
#include "smallf/dimfn.hpp"
#include "smallf/interval.hpp"
#include "smallf/rational.hpp"
#include "smallf/surd.hpp"
#include "smallf/tower.hpp"

namespace smallf {

/// power(s): g(x) = x^s, s > 2.  exppow(r): g_r(x) = exp(x^(2/r)), r > 0.
class ApproxFunction {
 public:
  enum class Kind { Power, ExpPow };

  static ApproxFunction power(double s);
  static ApproxFunction exppow(double r);
  /// "x^3", "x^2.5", "exppow:2" or "g_r:2".
  static ApproxFunction parse(const std::string& text);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  /// True for x^s with integer s, where g(q) is an integer computed exactly.
  bool integral() const;

  long double eval(long double x) const;
  long double inverse(long double y) const;
  /// g^-1(x^2).
  long double gamma(long double x) const { return inverse(x * x); }
  /// ceil(g(q)); exact when integral().
  BigInt ceil_at(std::int64_t q) const;
  /// ln g(x) for tower-sized x.
  SignedTower log_eval(const TowerScalar& x) const;
  /// 1/(g^-1(1/x))^2 as an exponent pair: x^(2/s) for powers, log^-r for exppow.
  DimensionFunction target() const;
  /// max over a log grid of g^-1(ab)/(g^-1(a) + g^-1(b)) for a, b in [2, ymax].
  double subadditivity_constant(long double ymax, int grid = 40) const;

  std::string str() const;

 private:
  ApproxFunction(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// r/q +- 1/ceil(g(q)) for r = 1..q-1 plus [0, 1/ceil(g(q))] and [1 - 1/ceil(g(q)), 1].
/// Stored closed. Requires disjoint intervals (g(q) > 2q, and g(1) > 2 at q = 1).
IntervalSet build_Gq(std::int64_t q, const ApproxFunction& g);
/// G_q without the two endpoint intervals.
IntervalSet build_Gq_prime(std::int64_t q, const ApproxFunction& g);

/// Union of G'_p over primes p in [n, 2n), with the originating p/r per interval.
struct HnSet {
  std::int64_t n = 0;
  IntervalSet set;
  std::vector<std::int64_t> prime;  // parallel to set
  std::vector<std::int64_t> numer;  // center numer/prime
  std::vector<std::int64_t> primes;
};

/// Requires a nonempty prime window and g(n) >= 16 n^2.
HnSet build_Hn(std::int64_t n, const ApproxFunction& g);

struct SeparationReport {
  std::optional<Rational> min_gap;     // between intervals of distinct primes
  std::optional<Rational> min_center;  // |r1/p1 - r2/p2| over distinct primes
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // indices of the min_gap pair
  Rational same_prime_gap;             // min over p of 1/p - 2/ceil(g(p))
  Rational gap_bound;                  // 1/(8 n^2)
  Rational center_bound;               // 1/(4 n^2)
  bool pass = false;
};

SeparationReport min_separation(const HnSet& h, const ApproxFunction& g);

struct ChildrenCount {
  std::int64_t count = 0;
  double bound = 0;  // p |I| / 3
  bool pass = false;
};

/// G'_p intervals inside I; requires |I| > 3/p.
ChildrenCount count_children(const Interval& I, std::int64_t p, const ApproxFunction& g);

struct JarnikLevel {
  std::int64_t n = 0;
  std::optional<IntervalSet> E;   // materialized when within budget
  std::uint64_t interval_count = 0;
  std::int64_t promised = 0;      // floor(n_k^2/(6 ln n_k g(2 n_{k-1}))), g(2 n_0) := 1
  Rational eps;                   // 1/(8 n_k^2)
  std::int64_t min_children = 0;  // over parents in E_{k-1}
  std::int64_t max_children = 0;
  std::size_t parents = 0;
  bool flag_a = true;             // n_k >= 3 g(2 n_{k-1})
  bool flag_b = true;             // ln n_k <= g(n_{k-1})
};

struct JarnikLevels {
  ApproxFunction g = ApproxFunction::power(3);
  std::vector<JarnikLevel> levels;  // levels[0] is E_0 = [0,1]

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  /// Promised (m_k, eps_k), or the realized minimum children counts.
  CantorSchedule schedule(bool realized = false) const;
  /// Children of a level-(k-1) interval among the materialized E_k.
  ChildGenerator generator() const;
};

constexpr std::uint64_t kJarnikBudget = 1'000'000;

/// E_k = the intervals of H_{n_k} inside E_{k-1}. Throws PreconditionError naming
/// (A) or (B) when consecutive terms are inadmissible, and CantorHypothesisError
/// when a parent has fewer than the promised children. Levels beyond the
/// interval budget are counted, not stored, and must be the last.
JarnikLevels build_levels(const ApproxFunction& g, const std::vector<std::int64_t>& n, int K);

struct CritlowTerm {
  int k = 0;
  SignedTower log_value;  // ln of the liminf expression
  SignedTower log_chain;  // ln n_{k-1}^(2(r-theta)/r)/(6^k e^(2 n_{k-2}^(2/r))) (exppow only)
};

struct CritlowReport {
  std::vector<CritlowTerm> terms;  // k = 2..
  LiminfClass liminf = LiminfClass::Undetermined;
  bool equivalent = false;  // h ~ target, so the gap is constant
};

/// Evaluates 1/(6^k g(n_{k-2})^2 Delta(h, target)(1/(ln(n_k) g(n_{k-1})))) for
/// k = 2..K, where seq holds n_0..n_K. Requires h to be dimensionally smaller
/// than or equivalent to g.target().
CritlowReport critlow_sequence(const ApproxFunction& g, const DimensionFunction& h,
                               const std::vector<TowerScalar>& seq);

/// The same expression for g = g_r along n_k = exp(k n_{k-1}^(2/r)) from n_0,
/// k = 2..K, with every term reduced to coefficients of P_j = n_j^(2/r) so
/// that equal towers cancel exactly.
CritlowReport critlow_ex48(double r, const DimensionFunction& h, double n0, int K);

struct Witness {
  std::int64_t p = 0;
  std::int64_t q = 0;
  QuadSurd error;  // |x - p/q|
};

struct WitnessResult {
  std::optional<Witness> witness;  // the minimum-error p/q with q <= qmax
  bool accepted = false;           // error < tolerance
  bool rational_input = false;
  std::int64_t qmax = 0;
};

/// Minimal |x - p/q| over q <= qmax, from the continued fraction of x
/// (last convergent vs. last semiconvergent). x must lie in [0, 1].
WitnessResult witness_search(const QuadSurd& x, std::int64_t qmax, const Rational& tolerance);
/// qmax = floor(f(n)), tolerance 1/n^2.
WitnessResult witness_search(const QuadSurd& x, const std::function<double(double)>& f, std::int64_t n);

struct InclusionReport {
  std::size_t samples = 0;
  std::size_t failures = 0;          // sample/level pairs without a witness
  std::size_t norm_failures = 0;     // witnesses violating |xq - p| < 2^s q^(1-s) (power mode)
  std::vector<QuadSurd> points;
};

/// Samples x = c + sqrt2 rho/16 at random E_K intervals (center c, radius rho);
/// for every level k needs a witness with q <= 2 n_k and error < 1/ceil(g(n_k)).
InclusionReport verify_inclusion(const JarnikLevels& levels, std::size_t sample_count, std::uint64_t seed = 0);

}  // namespace smallf

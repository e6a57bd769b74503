#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallf/dimfn.hpp"
#include "smallf/geometry.hpp"
#include "smallf/rational.hpp"
#include "smallf/surd.hpp"
#include "smallf/tower.hpp"

namespace smallf {

/// alpha: denominators q <= n^alpha. logpow: q <= ln(n^2)^(r/2).
enum class DenominatorMode { Alpha, LogPow };

struct ConstructionParams {
  DenominatorMode mode = DenominatorMode::Alpha;
  Rational alpha{1};
  double r = 2;
  std::uint64_t M0 = 1;
  double delta0 = 1;
  int levels = 0;
  /// Desk mode: explicit small n_1..n_J. Empty selects tower mode.
  std::vector<int> desk_sequence;
  /// Tower mode: n_1..n_J; generated by default_tower_sequence when empty.
  std::vector<TowerScalar> tower_sequence;
  /// Seed for the logpow default sequence (n_j of the fiber lemma).
  double n0 = 10;

  double alpha_value() const { return alpha.to_double(); }
  std::string mode_name() const { return mode == DenominatorMode::Alpha ? "alpha" : "logpow"; }
};

/// floor(f(n)): exact floor(n^alpha) in alpha mode.
std::int64_t denominator_bound(std::int64_t n, const ConstructionParams& p);

/// phi(t) = (1 - t)/(t sqrt2); t must lie in D = phi^-1([1/4, 3/4]).
QuadSurd phi(const QuadSurd& t);
/// 1/(1 + sqrt2 u) for u in [1/4, 3/4].
QuadSurd phi_inv(const Rational& u);

struct LipschitzBounds {
  double min_ratio = 0;
  double max_ratio = 0;
};
/// min/max of |phi(t) - phi(s)|/|t - s| over consecutive points of a uniform grid on D.
LipschitzBounds phi_lipschitz(int grid);

std::vector<Rational> build_Gamma(std::int64_t n, const ConstructionParams& p);
/// phi^-1(Gamma_n), in the order of Gamma_n (so decreasing in t).
std::vector<QuadSurd> build_Qn(std::int64_t n, const ConstructionParams& p);

struct StResult {
  std::int64_t count = 0;
  /// Distinct (p j + k q)/(n q), ascending; filled when requested.
  std::vector<Rational> values;
};

/// |{p j + k q : 0 <= j, k < n}| for coprime p, q: n^2 - (n-q)_+ (n-p)_+.
std::int64_t st_count_closed_form(std::int64_t n, std::int64_t p, std::int64_t q);

/// S(t) for t = phi^-1(p/q); p/q must belong to Gamma_n.
StResult compute_St(std::int64_t n, const Rational& pq, const ConstructionParams& p, bool with_values = false);

/// Sum over t in Q_n of |S(t)|, i.e. the number of plane points (t, l_jk(t)).
std::int64_t union_St_count(std::int64_t n, const ConstructionParams& p);

struct CoveringReport {
  std::int64_t n = 0;
  std::int64_t count = 0;   // rectangles, one per point of S(t) per t
  double half_width = 0;    // in x: sqrt2/n^2
  double half_height = 0;   // in y: delta_n + 2/n^2
  double diameter = 0;
  double diameter_constant = 0;  // diameter / (ln n / n^2)
  double cost = 0;               // count * h(diameter)
  double log_cost = 0;
  std::size_t audit_samples = 0;
  std::size_t audit_failures = 0;
};

/// Rectangle covering of Lambda_n = {(x, y) in G_n : |x - t| <= sqrt2/n^2, t in Q_n},
/// optionally audited with `audit_samples` random points (fixed seed).
CoveringReport cover_Lambda(std::int64_t n, const ConstructionParams& p, const DimensionFunction& h,
                            std::size_t audit_samples = 0, std::uint64_t seed = 0);

struct LevelState {
  int level = 0;
  TowerScalar n;          // n_j (unset at level 0)
  TowerScalar M;          // tube count
  TowerScalar inv_delta;  // 1/delta^j
  double delta = 0;       // finite widths only (desk mode)
  TowerScalar cover_count;
  std::optional<TubeFamily> family;  // desk mode
  /// Admissibility of n_{j+1} against this level (false when no next term).
  bool next_admissible = true;
  bool next_growth = true;  // n_{j+1} > n_j^j
};

/// Default tower sequence: alpha mode n_{j+1} = exp(exp(M_j + 1)) starting at
/// n_1 = exp(exp(M_0 + 1)); logpow mode the fiber-lemma sequence from n0.
std::vector<TowerScalar> default_tower_sequence(const ConstructionParams& p, int count);

/// Desk mode builds the tube families F_j (budget ~2e7 tubes); tower mode
/// tracks only counts and scales.
std::vector<LevelState> iterate_construction(const ConstructionParams& p);

enum class Trend { ToZero, Bounded, ToInfinity };
std::string to_string(Trend t);

struct HcostTerm {
  int j = 0;
  SignedTower log_cost;
};

struct HcostSequence {
  double theta = 0;
  double critical = 0;  // (1 + 3 alpha)/2
  std::vector<HcostTerm> terms;
  Trend trend = Trend::Bounded;
  bool boundary = false;  // theta == critical
};

/// log of n^(1+3a) lnln(n) h_theta(ln n / n^2) along the tower sequence, where
/// h_theta(x) = x^((1+3a)/2) ln(1/x)^-theta.
HcostSequence hcost_sequence(const ConstructionParams& p, double theta, int count);

/// Classifies a sequence of log values by its tail.
Trend classify_log_tail(const std::vector<SignedTower>& logs);

struct RatioTerm {
  int j = 0;
  TowerScalar log_n;
  double ratio = 0;
  SignedTower log_excess;  // ln(ratio - 1/2)
};

/// ratio_j = (lnln n_j (1 + 3r/2) + ln n_j)/(2 ln n_j - lnln n_j).
std::vector<RatioTerm> boxdim_ratio_sequence(double r, const std::vector<TowerScalar>& sequence);

}  // namespace smallf

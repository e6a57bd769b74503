#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smallf/dimfn.hpp"
#include "smallf/interval.hpp"
#include "smallf/rational.hpp"
#include "smallf/tower.hpp"

namespace smallf {

/// Children count m_k and promised gap eps_k for levels k = 1..K (index k-1).
struct CantorSchedule {
  std::vector<std::int64_t> m;
  std::vector<Rational> eps;

  CantorSchedule() = default;
  /// Throws unless m_k >= 1, eps_k > 0 and eps strictly decreases.
  CantorSchedule(std::vector<std::int64_t> m, std::vector<Rational> eps);

  int levels() const { return static_cast<int>(m.size()); }

  /// m_k = 2, eps_k = 3^-k.
  static CantorSchedule middle_thirds(int K);
  /// {"m": [...], "eps": [...]} with eps entries as numbers or "p/q" strings.
  static CantorSchedule from_json(const std::string& text);
  std::string json() const;
};

enum class LiminfClass { Positive, Zero, Undetermined };
std::string to_string(LiminfClass c);

/// Tail monotonicity over the last max(2, K/4) terms: non-decreasing (within
/// 1e-9) reads as positive, strictly decreasing as zero.
LiminfClass classify_liminf(const std::vector<double>& logs);
LiminfClass classify_liminf(const std::vector<SignedTower>& logs);

struct DkSequence {
  std::vector<double> log_d;  // ln D_k, k = 1..K
  LiminfClass liminf = LiminfClass::Undetermined;
};

/// D_k = m_1 ... m_{k-1} h(eps_k m_k) in log space. Throws PreconditionError
/// when h is not concave up to max eps_k m_k or eps_k m_k leaves h's domain.
DkSequence dk_sequence(const CantorSchedule& s, const DimensionFunction& h);

struct TowerDkSequence {
  std::vector<SignedTower> log_m;  // ln m_k after clamping
  std::vector<SignedTower> log_d;
  std::vector<bool> clamped;       // formula gave m_k < 1; one child kept
  LiminfClass liminf = LiminfClass::Undetermined;
};

/// D_k for m_k = n_k^2/(6 ln(n_k) g_r(2 n_{k-1})), eps_k = 1/(8 n_k^2) along
/// n_k = exp(k n_{k-1}^(2/r)), g_r(x) = exp(x^(2/r)); k = 1..K. A level whose
/// formula gives m_k < 1 keeps a single child. Same preconditions on h as above.
TowerDkSequence ex48_dk_sequence(double r, double n0, const DimensionFunction& h, int K);

/// Children of `parent` at level k (1-based).
using ChildGenerator = std::function<std::vector<Interval>(const Interval& parent, int k)>;
ChildGenerator middle_thirds_generator();

/// E_0 = [0,1] down to E_K.
struct NestedFamily {
  std::vector<IntervalSet> levels;
  /// parent[k][i]: index in levels[k-1] of the parent of levels[k][i] (parent[0] empty).
  std::vector<std::vector<std::size_t>> parent;
};

/// A failed Cantor hypothesis: which one, at which level, and where.
class CantorHypothesisError : public PreconditionError {
 public:
  enum class Kind { Nesting, Children, Gap, Budget };
  CantorHypothesisError(Kind kind, int level, Interval where, const std::string& what);
  Kind kind() const { return kind_; }
  int level() const { return level_; }
  const Interval& where() const { return where_; }

 private:
  Kind kind_;
  int level_;
  Interval where_;
};

constexpr std::size_t kNestedBudget = 1'000'000;

/// Builds and checks the family: every child inside its parent, at least m_k
/// children per parent, gaps between level-k intervals >= eps_k (exact).
NestedFamily build_nested(const CantorSchedule& s, const ChildGenerator& gen);

/// Mass 1/(m_1...m_k) on each of exactly m_k retained children per parent
/// (leftmost first). Inside a level-K interval mass is spread uniformly.
struct MassDistribution {
  CantorSchedule schedule;
  std::vector<IntervalSet> levels;
  std::vector<std::vector<std::size_t>> parent;
  std::vector<Rational> unit_mass;  // per level, 1/(m_1...m_k)
  /// Children of levels[k][i] are levels[k+1][child_begin[k][i] .. child_begin[k][i+1]).
  std::vector<std::vector<std::size_t>> child_begin;

  static MassDistribution from_family(const NestedFamily& f, const CantorSchedule& s);
};

/// Exact mu(U) by descent through the levels.
Rational mass_of_interval(const MassDistribution& d, const Interval& u);

/// min{m_k, 2|U|/eps_k}/(m_1...m_k) for the k with eps_k < |U| <= eps_{k-1}
/// (eps_0 = +inf); nullopt when |U| <= eps_K.
std::optional<Rational> mass_bound(const MassDistribution& d, const Interval& u);

/// Level-k intervals meeting U, for the k above.
std::int64_t level_intervals_meeting(const MassDistribution& d, const Interval& u, int k);

/// Random U with lengths log-uniform on [eps_K, min(1, h's domain)].
std::vector<Interval> sample_intervals(const MassDistribution& d, const DimensionFunction& h, std::size_t count,
                                       std::uint64_t seed);

struct MdpReport {
  double max_ratio = 0;  // max mu(U)/h(|U|) over samples
  Interval witness;
  std::vector<double> level_ratios;  // mu(I_k)/h(|I_k|) along the leftmost chain
  bool unbounded = false;            // level ratios grow along the chain
  double doubling_constant = 0;      // sup h(2x)/h(x) on [eps_K, 1/2]
  std::size_t samples = 0;
};

MdpReport verify_mdp(const MassDistribution& d, const DimensionFunction& h, std::size_t sample_count,
                     std::uint64_t seed = 1);

/// min over the last max(1, (K-1)/4) values of ln(m_1...m_{k-1})/(-ln(m_k eps_k)), k >= 2.
/// Requires K >= 2.
double classical_dim_estimate(const CantorSchedule& s);

}  // namespace smallf

#include "smallf/furstenberg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "smallf/contfrac.hpp"
#include "smallf/parallel.hpp"
#include "smallf/sequences.hpp"

namespace smallf {

namespace {

constexpr std::uint64_t kDeskTubeBudget = 20'000'000;
const Rational kQuarter(1, 4);
const Rational kThreeQuarters(3, 4);

void require_gamma(std::int64_t n, const Rational& pq, const ConstructionParams& p) {
  if (pq < kQuarter || kThreeQuarters < pq || pq.den() > denominator_bound(n, p))
    throw PreconditionError("compute_St: " + pq.str() + " is not in Gamma_" + std::to_string(n));
}

TowerScalar tower_u64(std::uint64_t v) { return TowerScalar::from_real(static_cast<long double>(v)); }

}  // namespace

std::int64_t denominator_bound(std::int64_t n, const ConstructionParams& p) {
  if (n < 1) throw PreconditionError("denominator_bound: n must be >= 1");
  if (p.mode == DenominatorMode::Alpha) return to_int64(floor_rational_power(BigInt(static_cast<long>(n)), p.alpha));
  const long double f = std::pow(2.0L * std::log(static_cast<long double>(n)), static_cast<long double>(p.r) / 2);
  return static_cast<std::int64_t>(std::floor(f));
}

QuadSurd phi(const QuadSurd& t) {
  const QuadSurd lo = phi_inv(kThreeQuarters), hi = phi_inv(kQuarter);
  if (t < lo || hi < t) throw DomainError("phi: t = " + t.str() + " outside D");
  return (QuadSurd(1) - t) / (t * QuadSurd::sqrt2());
}

QuadSurd phi_inv(const Rational& u) {
  if (u < kQuarter || kThreeQuarters < u) throw DomainError("phi_inv: u = " + u.str() + " outside [1/4, 3/4]");
  return QuadSurd(1) / (QuadSurd(1) + QuadSurd::sqrt2() * QuadSurd(u));
}

LipschitzBounds phi_lipschitz(int grid) {
  if (grid < 2) throw PreconditionError("phi_lipschitz: grid must be >= 2");
  const double lo = phi_inv(kThreeQuarters).to_double(), hi = phi_inv(kQuarter).to_double();
  auto f = [](double t) { return (1 - t) / (t * std::sqrt(2.0)); };
  LipschitzBounds b{HUGE_VAL, 0};
  for (int i = 0; i + 1 < grid; ++i) {
    const double t = lo + (hi - lo) * i / (grid - 1);
    const double s = lo + (hi - lo) * (i + 1) / (grid - 1);
    const double ratio = std::fabs(f(t) - f(s)) / (s - t);
    b.min_ratio = std::min(b.min_ratio, ratio);
    b.max_ratio = std::max(b.max_ratio, ratio);
  }
  return b;
}

std::vector<Rational> build_Gamma(std::int64_t n, const ConstructionParams& p) {
  if (n < 2) throw PreconditionError("build_Gamma: n must be >= 2");
  const std::int64_t qmax = denominator_bound(n, p);
  if (qmax < 1) return {};
  return farey_enumerate(kQuarter, kThreeQuarters, qmax);
}

std::vector<QuadSurd> build_Qn(std::int64_t n, const ConstructionParams& p) {
  std::vector<QuadSurd> out;
  for (const auto& u : build_Gamma(n, p)) out.push_back(phi_inv(u));
  return out;
}

std::int64_t st_count_closed_form(std::int64_t n, std::int64_t p, std::int64_t q) {
  return n * n - std::max<std::int64_t>(0, n - q) * std::max<std::int64_t>(0, n - p);
}

StResult compute_St(std::int64_t n, const Rational& pq, const ConstructionParams& p, bool with_values) {
  require_gamma(n, pq, p);
  const std::int64_t a = to_int64(pq.num()), q = to_int64(pq.den());
  StResult res;
  res.count = st_count_closed_form(n, a, q);
  if (with_values) {
    std::vector<char> seen(static_cast<std::size_t>((n - 1) * (a + q) + 1), 0);
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k) seen[static_cast<std::size_t>(a * j + k * q)] = 1;
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (seen[v]) res.values.emplace_back(static_cast<long long>(v), static_cast<long long>(n * q));
  }
  return res;
}

std::int64_t union_St_count(std::int64_t n, const ConstructionParams& p) {
  std::int64_t total = 0;
  for (const auto& u : build_Gamma(n, p)) total += st_count_closed_form(n, to_int64(u.num()), to_int64(u.den()));
  return total;
}

CoveringReport cover_Lambda(std::int64_t n, const ConstructionParams& p, const DimensionFunction& h,
                            std::size_t audit_samples, std::uint64_t seed) {
  if (n < 2) throw PreconditionError("cover_Lambda: n must be >= 2");
  const auto gamma = build_Gamma(n, p);
  const double nn = static_cast<double>(n) * n;
  const double delta_n = std::log(static_cast<double>(n)) / nn;
  CoveringReport rep;
  rep.n = n;
  for (const auto& u : gamma) rep.count += st_count_closed_form(n, to_int64(u.num()), to_int64(u.den()));
  rep.half_width = std::sqrt(2.0) / nn;
  rep.half_height = delta_n + 2.0 / nn;
  rep.diameter = 2 * std::hypot(rep.half_width, rep.half_height);
  rep.diameter_constant = rep.diameter / delta_n;
  if (rep.count > 0) {
    rep.log_cost = std::log(static_cast<double>(rep.count)) + h.log_eval_at(-std::log(rep.diameter));
    rep.cost = static_cast<double>(rep.count) * h.eval(rep.diameter);
  }
  if (audit_samples == 0 || gamma.empty()) return rep;

  // Draw every sample up front so the audit is independent of thread count.
  struct Sample {
    double x, y;
  };
  std::vector<double> ts(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) ts[i] = phi_inv(gamma[i]).to_double();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<std::int64_t> pick_j(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_t(0, gamma.size() - 1);
  std::vector<Sample> samples(audit_samples);
  for (auto& s : samples) {
    const std::int64_t j = pick_j(rng), k = pick_j(rng);
    const double t = ts[pick_t(rng)];
    s.x = t + rep.half_width * unit(rng);
    const double line = (1 - s.x) * static_cast<double>(j) / n + s.x * std::sqrt(2.0) * static_cast<double>(k) / n;
    s.y = line + delta_n * unit(rng);
  }
  // Q_n is decreasing in t when listed in Gamma order; search a sorted copy.
  std::vector<std::size_t> by_t(ts.size());
  for (std::size_t i = 0; i < by_t.size(); ++i) by_t[i] = i;
  std::sort(by_t.begin(), by_t.end(), [&](std::size_t a, std::size_t b) { return ts[a] < ts[b]; });
  std::vector<double> sorted_t(ts.size());
  for (std::size_t i = 0; i < by_t.size(); ++i) sorted_t[i] = ts[by_t[i]];

  const double slack = 1e-12;
  auto covered = [&](const Sample& s) {
    auto it = std::lower_bound(sorted_t.begin(), sorted_t.end(), s.x - rep.half_width - slack);
    for (; it != sorted_t.end() && *it <= s.x + rep.half_width + slack; ++it) {
      const Rational& u = gamma[by_t[static_cast<std::size_t>(it - sorted_t.begin())]];
      const std::int64_t a = to_int64(u.num()), q = to_int64(u.den());
      // Points of S(t) sit at y = t sqrt2 v/(n q) with v = a j + k q.
      const double scale = *it * std::sqrt(2.0) / (static_cast<double>(n) * q);
      const auto vlo = static_cast<std::int64_t>(std::ceil((s.y - rep.half_height - slack) / scale));
      const auto vhi = static_cast<std::int64_t>(std::floor((s.y + rep.half_height + slack) / scale));
      for (std::int64_t v = std::max<std::int64_t>(vlo, 0); v <= vhi; ++v)
        for (std::int64_t k = 0; k < n && k * q <= v; ++k) {
          const std::int64_t rest = v - k * q;
          if (rest % a == 0 && rest / a < n) return true;
        }
    }
    return false;
  };
  const auto ok = parallel_map(samples.size(), [&](std::size_t i) { return covered(samples[i]); });
  rep.audit_samples = samples.size();
  rep.audit_failures = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), false));
  return rep;
}

std::vector<TowerScalar> default_tower_sequence(const ConstructionParams& p, int count) {
  std::vector<TowerScalar> out;
  if (count <= 0) return out;
  if (p.mode == DenominatorMode::LogPow) {
    for (const auto& t : generate_sequence(SequenceKind::Lemma31, p.r, p.n0, count)) out.push_back(t.value);
    return out;
  }
  TowerScalar M = tower_u64(p.M0);
  const TowerScalar one = TowerScalar::from_real(1);
  for (int j = 1; j <= count; ++j) {
    const TowerScalar n = tower_exp(tower_exp(tower_add(M, one)));
    out.push_back(n);
    M = tower_mul(M, tower_pow(n, 2));
  }
  return out;
}

std::vector<LevelState> iterate_construction(const ConstructionParams& p) {
  const bool desk = !p.desk_sequence.empty();
  const int J = desk ? (p.levels > 0 ? std::min<int>(p.levels, static_cast<int>(p.desk_sequence.size()))
                                     : static_cast<int>(p.desk_sequence.size()))
                     : p.levels;
  if (p.M0 < 1) throw PreconditionError("iterate_construction: M0 must be >= 1");
  if (!(p.delta0 > 0)) throw PreconditionError("iterate_construction: delta0 must be positive");

  std::vector<TowerScalar> seq;
  if (desk) {
    for (int j = 0; j < J; ++j) {
      if (p.desk_sequence[static_cast<std::size_t>(j)] < 2)
        throw PreconditionError("iterate_construction: desk n_j must be >= 2");
      seq.push_back(TowerScalar::from_real(p.desk_sequence[static_cast<std::size_t>(j)]));
    }
  } else {
    seq = p.tower_sequence.empty() ? default_tower_sequence(p, J) : p.tower_sequence;
    if (static_cast<int>(seq.size()) < J) throw PreconditionError("iterate_construction: tower sequence shorter than levels");
    seq.resize(static_cast<std::size_t>(J));
  }

  std::vector<LevelState> out;
  LevelState s0;
  s0.M = tower_u64(p.M0);
  s0.delta = p.delta0;
  s0.inv_delta = TowerScalar::from_real(1.0L / p.delta0);
  s0.cover_count = s0.M;
  if (desk) {
    TubeFamily f0;
    f0.delta = p.delta0;
    for (std::uint64_t i = 0; i < p.M0; ++i)
      f0.tubes.push_back({(2.0 * static_cast<double>(i) + 1) / (2.0 * static_cast<double>(p.M0)), 0.0, p.delta0});
    s0.family = std::move(f0);
  }
  out.push_back(std::move(s0));

  const long double cover_exp = 1 + 3 * static_cast<long double>(p.alpha_value());
  for (int j = 1; j <= J; ++j) {
    const LevelState& prev = out.back();
    const TowerScalar& n = seq[static_cast<std::size_t>(j - 1)];
    LevelState s;
    s.level = j;
    s.n = n;
    s.M = tower_mul(prev.M, tower_pow(n, 2));
    const TowerScalar ln_n = n.log();
    // 1/delta_n = n^2/ln n.
    s.inv_delta = (SignedTower::log_of(prev.inv_delta) + 2.0L * SignedTower(1, ln_n) -
                   SignedTower::log_of(ln_n)).exp();
    if (desk) {
      const int nd = p.desk_sequence[static_cast<std::size_t>(j - 1)];
      const std::uint64_t tubes = static_cast<std::uint64_t>(prev.family->tubes.size()) * nd * nd;
      if (tubes > kDeskTubeBudget)
        throw PreconditionError("iterate_construction: desk mode would need " + std::to_string(tubes) +
                                " tubes (budget " + std::to_string(kDeskTubeBudget) + "); use tower mode");
      const TubeFamily g = build_Gn(nd);
      TubeFamily f;
      f.n = nd;
      f.level = j;
      f.delta = prev.family->delta * g.delta;
      f.tubes.reserve(tubes);
      for (const auto& t : prev.family->tubes) {
        const TubeFamily img = apply_affine({t.m, t.delta, t.b}, g);
        f.tubes.insert(f.tubes.end(), img.tubes.begin(), img.tubes.end());
      }
      s.delta = f.delta;
      s.family = std::move(f);
      s.cover_count = tower_mul(prev.M, tower_u64(static_cast<std::uint64_t>(union_St_count(nd, p))));
    } else {
      s.delta = static_cast<double>(1.0L / s.inv_delta.to_long_double());
      const TowerScalar lnln = ln_n.level() == 0 && ln_n.mantissa() <= 1 ? TowerScalar() : ln_n.log();
      if (p.mode == DenominatorMode::Alpha) {
        s.cover_count = tower_mul(tower_mul(prev.M, tower_pow(n, cover_exp)), lnln);
      } else {
        s.cover_count = tower_mul(tower_mul(prev.M, n), tower_pow(ln_n, 1.5L * p.r));
      }
    }
    out.push_back(std::move(s));
  }

  // Admissibility of each next term against the current level.
  for (int j = 0; j < J; ++j) {
    LevelState& s = out[static_cast<std::size_t>(j)];
    const TowerScalar& next = seq[static_cast<std::size_t>(j)];
    const TowerScalar ln_next = next.log();
    if (p.mode == DenominatorMode::Alpha) {
      s.next_admissible = ln_next.level() == 0 && ln_next.mantissa() <= 1 ? false : !(ln_next.log() < s.M);
      // Non-strict: at tower level lnln n = M + 1 and M are indistinguishable.
    } else {
      s.next_admissible = !(ln_next < s.M);
    }
    if (j == 0) {
      s.next_growth = true;
    } else {
      // n_{j+1} > n_j^j, compared through logs.
      s.next_growth = static_cast<long double>(j) * SignedTower(1, s.n.log()) < SignedTower(1, ln_next);
    }
  }
  if (!out.empty()) out.back().next_admissible = true;
  return out;
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::ToZero: return "to_zero";
    case Trend::Bounded: return "bounded";
    case Trend::ToInfinity: return "to_infinity";
  }
  return "?";
}

Trend classify_log_tail(const std::vector<SignedTower>& logs) {
  if (logs.empty()) return Trend::Bounded;
  const std::size_t tail = std::min<std::size_t>(3, logs.size());
  bool inc = true, dec = true;
  for (std::size_t i = logs.size() - tail + 1; i < logs.size(); ++i) {
    if (!(logs[i - 1] < logs[i])) inc = false;
    if (!(logs[i] < logs[i - 1])) dec = false;
  }
  const SignedTower big = SignedTower::from_real(20);
  if (dec && logs.back() < -big) return Trend::ToZero;
  if (inc && big < logs.back()) return Trend::ToInfinity;
  return Trend::Bounded;
}

HcostSequence hcost_sequence(const ConstructionParams& p, double theta, int count) {
  if (p.mode != DenominatorMode::Alpha) throw PreconditionError("hcost_sequence: alpha mode only");
  HcostSequence out;
  out.theta = theta;
  out.critical = (1 + 3 * p.alpha_value()) / 2;
  out.boundary = theta == out.critical;
  const auto seq = p.tower_sequence.empty() ? default_tower_sequence(p, count) : p.tower_sequence;
  const long double c = out.critical;
  std::vector<SignedTower> logs;
  for (int j = 1; j <= count && j <= static_cast<int>(seq.size()); ++j) {
    const TowerScalar ell = seq[static_cast<std::size_t>(j - 1)].log();
    if (!(TowerScalar::from_real(1) < ell)) throw PreconditionError("hcost_sequence: needs ln n_j > 1");
    const TowerScalar lam = ell.log();
    long double tail = -theta * std::log(2.0L);
    if (lam.finite()) {
      const long double lv = lam.to_long_double();
      tail -= theta * std::log1p(-lv * std::exp(-lv) / 2);
    }
    HcostTerm t;
    t.j = j;
    t.log_cost = (c - theta) * SignedTower(1, lam) + SignedTower::log_of(lam) + SignedTower::from_real(tail);
    logs.push_back(t.log_cost);
    out.terms.push_back(t);
  }
  out.trend = classify_log_tail(logs);
  return out;
}

std::vector<RatioTerm> boxdim_ratio_sequence(double r, const std::vector<TowerScalar>& sequence) {
  const long double c = 1 + 1.5L * r;
  std::vector<RatioTerm> out;
  int j = 0;
  for (const auto& n : sequence) {
    ++j;
    RatioTerm t;
    t.j = j;
    t.log_n = n.log();
    if (!(TowerScalar::from_real(1) < t.log_n)) throw PreconditionError("boxdim_ratio_sequence: needs ln n_j > 1");
    const TowerScalar lam = t.log_n.log();
    // ratio - 1/2 = (c + 1/2) lam / (2 ln n - lam)
    const SignedTower denom = 2.0L * SignedTower(1, t.log_n) - SignedTower(1, lam);
    t.log_excess = SignedTower::from_real(std::log(c + 0.5L)) + SignedTower::log_of(lam) -
                   SignedTower::log_of(denom.magnitude());
    const long double lx = t.log_excess.to_long_double();
    t.ratio = static_cast<double>(0.5L + (std::isfinite(lx) ? std::exp(lx) : 0.0L));
    out.push_back(t);
  }
  return out;
}

}  // namespace smallf

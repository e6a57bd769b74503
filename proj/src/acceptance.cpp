#include "smallf/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "smallf/cantor.hpp"
#include "smallf/contfrac.hpp"
#include "smallf/dimfn.hpp"
#include "smallf/format.hpp"
#include "smallf/furstenberg.hpp"
#include "smallf/geometry.hpp"
#include "smallf/jarnik.hpp"
#include "smallf/parallel.hpp"
#include "smallf/primes.hpp"
#include "smallf/sequences.hpp"
#include "smallf/sumset.hpp"

namespace smallf {

namespace {

struct Context {
  std::uint64_t seed = 0;
  std::optional<int> discrepancy_n0;
};

CriterionResult make_result(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

std::string sig(double v) { return fmt_sig(v, 6); }

/// Restores the worker count on scope exit.
class ThreadScope {
 public:
  explicit ThreadScope(int threads) : saved_(parallelism()) { set_parallelism(threads); }
  ~ThreadScope() { set_parallelism(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Covering radius of the sorted values by scanning each consecutive gap
/// clipped to [0, 1]; independent of the cell decomposition in geometry.
QuadSurd gap_scan_radius(const std::vector<QuadSurd>& v) {
  const QuadSurd zero(0), one(1), half(Rational(1, 2));
  QuadSurd best(0);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const QuadSurd lo = std::max(zero, v[i]), hi = std::min(one, v[i + 1]);
    if (hi < lo) continue;
    const QuadSurd x = std::clamp((v[i] + v[i + 1]) * half, lo, hi);
    best = std::max(best, std::min(x - v[i], v[i + 1] - x));
  }
  if (v.back() < one) best = std::max(best, one - v.back());
  return best;
}

int discrepancy_threshold(Context& ctx) {
  if (!ctx.discrepancy_n0) ctx.discrepancy_n0 = scan_discrepancy(2000).threshold;
  return *ctx.discrepancy_n0;
}

CriterionResult c1_discrepancy(Context& ctx) {
  auto r = make_result(1, "discrepancy");
  const auto t0 = std::chrono::steady_clock::now();
  DiscrepancyScan scan;
  {
    ThreadScope single(1);
    scan = scan_discrepancy(2000);
  }
  const double secs = elapsed(t0);
  ctx.discrepancy_n0 = scan.threshold;
  constexpr int kOracleMax = 60;
  int oracle_mismatch = 0;
  for (int n = 1; n <= kOracleMax; ++n)
    if (!(gap_scan_radius(discrepancy_values(n)) == scan.rows[static_cast<std::size_t>(n - 1)].rho)) ++oracle_mismatch;
  int failures = 0;
  if (scan.threshold > 0)
    for (int n = scan.threshold; n <= 2000; ++n)
      if (!scan.rows[static_cast<std::size_t>(n - 1)].pass) ++failures;
  r.pass = scan.threshold > 0 && scan.threshold <= 100 && failures == 0 && oracle_mismatch == 0 && secs <= 60;
  r.detail = "n0=" + std::to_string(scan.threshold) + " (<=100), rho(n) <= ln(n)/n^2 on [n0,2000], max rho n^2/ln n=" +
             sig(scan.max_ratio) + " at n=" + std::to_string(scan.max_ratio_at) + ", gap-scan oracle mismatches " +
             std::to_string(oracle_mismatch) + "/" + std::to_string(kOracleMax);
  r.measured = {{"n0", scan.threshold}, {"max_ratio", scan.max_ratio}, {"max_ratio_at", scan.max_ratio_at},
                {"oracle_mismatches", oracle_mismatch}};
  return r;
}

/// count <= 2 n^(1 + alpha) exactly, alpha = a/b: count^b <= 2^b n^(a + b).
bool st_within_bound(std::int64_t count, std::int64_t n, const Rational& alpha) {
  const unsigned long a = alpha.num().get_ui(), b = alpha.den().get_ui();
  BigInt lhs, rhs, two_b;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(count), b);
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(n), a + b);
  mpz_ui_pow_ui(two_b.get_mpz_t(), 2, b);
  return lhs <= two_b * rhs;
}

const std::vector<Rational>& alphas() {
  static const std::vector<Rational> a{Rational(1, 4), Rational(1, 2), Rational(1)};
  return a;
}

CriterionResult c2_st_bound(Context&) {
  auto r = make_result(2, "st-bound");
  constexpr int kOracleMax = 24;
  std::size_t violations = 0, oracle_mismatch = 0, checked = 0;
  Json ratios = Json::object();
  for (const auto& alpha : alphas()) {
    ConstructionParams p;
    p.alpha = alpha;
    struct Row {
      std::size_t checked = 0, violations = 0, mismatch = 0;
      double max_ratio = 0;
    };
    const auto rows = parallel_map(199, [&](std::size_t i) {
      const std::int64_t n = static_cast<std::int64_t>(i) + 2;
      Row row;
      const double scale = std::pow(static_cast<double>(n), 1 + alpha.to_double());
      for (const auto& u : build_Gamma(n, p)) {
        const auto res = compute_St(n, u, p, n <= kOracleMax);
        ++row.checked;
        if (!st_within_bound(res.count, n, alpha)) ++row.violations;
        if (n <= kOracleMax && static_cast<std::int64_t>(res.values.size()) != res.count) ++row.mismatch;
        row.max_ratio = std::max(row.max_ratio, static_cast<double>(res.count) / scale);
      }
      return row;
    });
    double max_ratio = 0;
    for (const auto& row : rows) {
      checked += row.checked;
      violations += row.violations;
      oracle_mismatch += row.mismatch;
      max_ratio = std::max(max_ratio, row.max_ratio);
    }
    ratios[alpha.str()] = max_ratio;
  }
  r.pass = violations == 0 && oracle_mismatch == 0;
  r.detail = std::to_string(checked) + " (n, t) pairs with n <= 200, alpha in {1/4,1/2,1}: " + std::to_string(violations) +
             " violations of |S(t)| <= 2 n^(1+alpha); max |S(t)|/n^(1+alpha) = " + sig(ratios["1/4"].get<double>()) +
             ", " + sig(ratios["1/2"].get<double>()) + ", " + sig(ratios["1"].get<double>()) +
             "; enumeration oracle mismatches " + std::to_string(oracle_mismatch);
  r.measured = {{"checked", checked}, {"violations", violations}, {"max_ratio", ratios},
                {"oracle_mismatches", oracle_mismatch}};
  return r;
}

/// |union of S(t)| as a set of exact plane points (u, v/(n q)), t = phi^-1(u).
std::size_t union_points_oracle(std::int64_t n, const ConstructionParams& p) {
  std::set<std::pair<Rational, Rational>> pts;
  for (const auto& u : build_Gamma(n, p)) {
    const std::int64_t a = to_int64(u.num()), q = to_int64(u.den());
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k) pts.emplace(u, Rational(a * j + k * q, n * q));
  }
  return pts.size();
}

CriterionResult c3_union_bound(Context&) {
  auto r = make_result(3, "union-bound");
  const std::vector<std::int64_t> ns{8, 16, 32, 64, 128};
  Json constants = Json::object();
  bool ok = true;
  std::size_t oracle_mismatch = 0;
  std::string parts;
  for (const auto& alpha : alphas()) {
    ConstructionParams p;
    p.alpha = alpha;
    double C = 0;
    for (auto n : ns) {
      const std::int64_t total = union_St_count(n, p);
      C = std::max(C, static_cast<double>(total) / std::pow(static_cast<double>(n), 1 + 3 * alpha.to_double()));
      if (n <= 16 && union_points_oracle(n, p) != static_cast<std::size_t>(total)) ++oracle_mismatch;
    }
    constants[alpha.str()] = C;
    ok = ok && C <= 8;
    parts += (parts.empty() ? "" : ", ") + ("C(" + alpha.str() + ")=" + sig(C));
  }
  r.pass = ok && oracle_mismatch == 0;
  r.detail = "max |U S(t)|/n^(1+3alpha) over n in {8..128}: " + parts + " (<= 8); point-set oracle mismatches " +
             std::to_string(oracle_mismatch);
  r.measured = {{"C", constants}, {"oracle_mismatches", oracle_mismatch}};
  return r;
}

CriterionResult c4_gset(Context& ctx) {
  auto r = make_result(4, "gset");
  const int n0 = std::max(2, discrepancy_threshold(ctx));
  std::vector<int> failing;
  std::size_t slope_failures = 0;
  for (int n = n0; n <= 500; ++n) {
    const auto rep = verify_gset(build_Gn(n), 10000);
    if (!rep.all_covered) {
      failing.push_back(n);
      slope_failures += rep.failures;
    }
  }
  r.pass = failing.empty();
  r.detail = "verify_gset(build_Gn(n)) on 10^4 slopes for n in [" + std::to_string(n0) + ",500]: " +
             std::to_string(failing.size()) + " failing n" +
             (failing.empty() ? std::string() : ", first " + std::to_string(failing.front()));
  r.measured = {{"n0", n0}, {"failing_n", failing}, {"slope_failures", slope_failures}};
  return r;
}

CriterionResult c5_cantor(Context& ctx) {
  auto r = make_result(5, "cantor");
  const double s = std::log(2.0) / std::log(3.0);
  const DimensionFunction h(s, 0);
  const auto dk = dk_sequence(CantorSchedule::middle_thirds(40), h);
  const double expect = std::pow(2.0, s - 1);
  double worst = 0;
  for (double ld : dk.log_d) worst = std::max(worst, std::fabs(std::exp(ld) - expect));

  const auto sched = CantorSchedule::middle_thirds(8);
  const auto mass = MassDistribution::from_family(build_nested(sched, middle_thirds_generator()), sched);
  const auto samples = sample_intervals(mass, h, 10000, ctx.seed);
  const auto verdict = parallel_map(samples.size(), [&](std::size_t i) -> int {
    const auto bound = mass_bound(mass, samples[i]);
    if (!bound) return 2;
    return mass_of_interval(mass, samples[i]) <= *bound ? 0 : 1;
  });
  const auto violations = std::count(verdict.begin(), verdict.end(), 1);
  const auto unbounded = std::count(verdict.begin(), verdict.end(), 2);
  r.pass = worst <= 1e-9 && dk.liminf == LiminfClass::Positive && violations == 0 && unbounded == 0;
  r.detail = "middle thirds, h = x^(ln2/ln3): max |D_k - 2^(s-1)| = " + sig(worst) + " for k <= 40 (liminf " +
             to_string(dk.liminf) + "); mass bound violations " + std::to_string(violations) + "/" +
             std::to_string(samples.size()) + " sampled intervals at level 8";
  r.measured = {{"D_k", expect}, {"max_deviation", worst}, {"violations", violations}, {"samples", samples.size()},
                {"below_eps_K", unbounded}};
  return r;
}

CriterionResult c6_separation(Context&) {
  auto r = make_result(6, "jarnik-separation");
  const auto g = ApproxFunction::power(3);
  struct Row {
    bool pass = false;
    double gap_ratio = 0, center_ratio = 0;
  };
  const auto rows = parallel_map(185, [&](std::size_t i) {
    const std::int64_t n = static_cast<std::int64_t>(i) + 16;
    const auto rep = min_separation(build_Hn(n, g), g);
    Row row;
    row.pass = rep.pass;
    if (rep.min_gap) row.gap_ratio = (*rep.min_gap / rep.gap_bound).to_double();
    if (rep.min_center) row.center_ratio = (*rep.min_center / rep.center_bound).to_double();
    return row;
  });
  std::vector<int> failing;
  double gap = HUGE_VAL, center = HUGE_VAL;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].pass) failing.push_back(static_cast<int>(i) + 16);
    gap = std::min(gap, rows[i].gap_ratio);
    center = std::min(center, rows[i].center_ratio);
  }
  r.pass = failing.empty();
  r.detail = "g = x^3, n in [16,200]: " + std::to_string(failing.size()) +
             " failing n; min gap/(1/(8n^2)) = " + sig(gap) + ", min center/(1/(4n^2)) = " + sig(center);
  r.measured = {{"failing_n", failing}, {"min_gap_ratio", gap}, {"min_center_ratio", center}};
  return r;
}

CriterionResult c7_children(Context&) {
  auto r = make_result(7, "jarnik-children");
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = ApproxFunction::power(3);
  const long double n2 = 192000;
  const auto m2 = static_cast<std::int64_t>(std::floor(n2 * n2 / (6 * std::log(n2) * g.eval(40))));
  try {
    const auto L = build_levels(g, {20, 192000}, 2);
    const auto& lv = L.levels[2];
    const double secs = elapsed(t0);
    r.pass = lv.promised == m2 && lv.min_children >= m2 && secs <= 120;
    r.detail = "n = (20, 192000): promised m_2 = " + std::to_string(lv.promised) + " (formula " + std::to_string(m2) +
               "), children per level-1 parent in [" + std::to_string(lv.min_children) + ", " +
               std::to_string(lv.max_children) + "] over " + std::to_string(lv.parents) + " parents, " +
               std::to_string(lv.interval_count) + " level-2 intervals";
    r.measured = {{"m2", lv.promised}, {"min_children", lv.min_children}, {"max_children", lv.max_children},
                  {"parents", lv.parents}, {"intervals", lv.interval_count}};
  } catch (const Error& e) {
    r.pass = false;
    r.detail = std::string("build failed: ") + e.what();
  }
  return r;
}

/// Min |x - p/q| over q <= qmax by trying floor(xq) and floor(xq) + 1 for every q.
Witness farey_scan(const QuadSurd& x, std::int64_t qmax) {
  Witness best;
  bool have = false;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const QuadSurd xq = x * QuadSurd(Rational(q));
    const std::int64_t p0 = to_int64(xq.floor());
    for (std::int64_t p = p0; p <= p0 + 1; ++p) {
      const QuadSurd err = (x - QuadSurd(Rational(p, q))).abs();
      if (!have || err < best.error) {
        best = {p, q, err};
        have = true;
      }
    }
  }
  return best;
}

CriterionResult c8_witness(Context& ctx) {
  auto r = make_result(8, "witness");
  constexpr std::int64_t kQmax = 10000;
  constexpr std::size_t kCount = 100;
  static const std::int64_t radicands[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19};
  std::mt19937_64 rng(ctx.seed);
  std::uniform_int_distribution<std::int64_t> pick_a(-50, 50), pick_b(1, 30), pick_c(1, 40), pick_d(0, 11), coin(0, 1);
  std::vector<QuadSurd> xs;
  for (std::size_t i = 0; i < kCount; ++i) {
    const std::int64_t a = pick_a(rng), b = pick_b(rng) * (coin(rng) ? 1 : -1), c = pick_c(rng);
    QuadSurd x(Rational(a, c), Rational(b, c), radicands[pick_d(rng)]);
    x -= QuadSurd(Rational(x.floor()));
    xs.push_back(x);
  }
  const auto agree = parallel_map(kCount, [&](std::size_t i) {
    const auto fast = witness_search(xs[i], kQmax, Rational(1));
    const auto slow = farey_scan(xs[i], kQmax);
    return fast.witness && fast.witness->p == slow.p && fast.witness->q == slow.q && fast.witness->error == slow.error;
  });
  const auto matches = std::count(agree.begin(), agree.end(), true);
  r.pass = matches == static_cast<long>(kCount);
  r.detail = std::to_string(matches) + "/" + std::to_string(kCount) +
             " random quadratic surds agree with the brute-force scan at q <= 10^4";
  r.measured = {{"agreements", matches}, {"count", kCount}};
  return r;
}

CriterionResult c9_sumset(Context&) {
  auto r = make_result(9, "sumset");
  const auto E4 = DigitBlockSet::uniform(4, {0, 1}), F4 = DigitBlockSet::uniform(4, {0, 2});
  const auto cov4 = sumset_covers(truncate(E4, 6), truncate(F4, 6));
  const DigitBlockSet E2(2, {1, 2, 8}, Parity::ZeroOnEven), F2(2, {1, 2, 8}, Parity::ZeroOnOdd);
  const auto cov2 = sumset_covers(truncate(E2, 8), truncate(F2, 8));
  const auto deep = truncate(E4, 12);
  double worst = 0;
  for (int m = 1; m <= 12; ++m) worst = std::max(worst, std::fabs(box_count(deep, m).slope - 0.5));
  r.pass = cov4.covered && cov4.targets == 4096 && cov2.covered && cov2.targets == 256 && worst <= 1e-12;
  r.detail = "base 4 {0,1}+{0,2}: " + std::to_string(cov4.targets - cov4.missing.size()) + "/" +
             std::to_string(cov4.targets) + " depth-6 residues; base 2 blocks (1,2,8): " +
             std::to_string(cov2.targets - cov2.missing.size()) + "/" + std::to_string(cov2.targets) +
             " depth-8 residues; max |slope - 1/2| = " + sig(worst) + " for depth <= 12";
  r.measured = {{"base4_missing", cov4.missing.size()}, {"base2_missing", cov2.missing.size()},
                {"max_slope_error", worst}};
  return r;
}

CriterionResult c10_hcost(Context&) {
  auto r = make_result(10, "hcost-decay");
  bool ok = true;
  std::string parts;
  Json trends = Json::object();
  for (const auto& alpha : {Rational(1, 2), Rational(1)}) {
    ConstructionParams p;
    p.alpha = alpha;
    const double crit = (1 + 3 * alpha.to_double()) / 2;
    const auto above = hcost_sequence(p, crit + 0.5, 10);
    const auto below = hcost_sequence(p, crit - 0.5, 10);
    ok = ok && above.trend == Trend::ToZero && below.trend == Trend::ToInfinity;
    trends[alpha.str()] = {{"theta_plus", to_string(above.trend)}, {"theta_minus", to_string(below.trend)}};
    parts += (parts.empty() ? "" : "; ") + ("alpha=" + alpha.str() + ": theta=" + sig(crit + 0.5) + " " +
                                            to_string(above.trend) + ", theta=" + sig(crit - 0.5) + " " +
                                            to_string(below.trend));
  }
  r.pass = ok;
  r.detail = "j <= 10 along the tower sequence, " + parts;
  r.measured = {{"trends", trends}};
  return r;
}

CriterionResult c11_boxdim(Context&) {
  auto r = make_result(11, "boxdim-ratio");
  ConstructionParams p;
  p.mode = DenominatorMode::LogPow;
  p.r = 2;
  const auto terms = boxdim_ratio_sequence(2, default_tower_sequence(p, 8));
  bool monotone = true, close = true, resolved = true;
  int first_close = 0;
  const SignedTower tol = SignedTower::from_real(std::log(1e-3L));
  const TowerScalar big = TowerScalar::from_real(1e4L);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    resolved = resolved && terms[i].log_excess.resolved();
    if (i > 0 && !(terms[i].log_excess < terms[i - 1].log_excess)) monotone = false;
    if (!(terms[i].log_n < big)) {
      if (!first_close) first_close = terms[i].j;
      if (!(terms[i].log_excess < tol)) close = false;
    }
  }
  r.pass = monotone && close && resolved && first_close > 0 && terms.size() == 8;
  Json excess = Json::array();
  for (const auto& t : terms) excess.push_back(t.log_excess.str());
  r.detail = "r = 2, j <= 8: ratio_1 = " + sig(terms.front().ratio) + ", ln(ratio_j - 1/2) " +
             (monotone ? "strictly decreasing" : "not monotone") + " (last " + terms.back().log_excess.str() +
             "); |ratio_j - 1/2| < 1e-3 " + (close ? "holds" : "fails") + " from j = " + std::to_string(first_close) +
             " where ln n_j >= 1e4";
  r.measured = {{"log_excess", excess}, {"first_j_ln_n_ge_1e4", first_close}};
  return r;
}

CriterionResult c12_critlow(Context&) {
  auto r = make_result(12, "critlow");
  bool ok = true;
  std::string parts;
  Json classes = Json::object();
  for (double theta : {0.5, 1.0, 1.5, 2.0}) {
    const DimensionFunction h(0, theta);
    const auto crit = critlow_ex48(2, h, 10, 10);
    const auto dk = ex48_dk_sequence(2, 10, h, 10);
    const LiminfClass want = theta < 2 ? LiminfClass::Positive : LiminfClass::Zero;
    bool resolved = true;
    for (const auto& t : crit.terms) resolved = resolved && t.log_value.resolved();
    ok = ok && resolved && crit.liminf == want && dk.liminf == want;
    classes[sig(theta)] = {{"critlow", to_string(crit.liminf)}, {"D_k", to_string(dk.liminf)}};
    parts += (parts.empty() ? "" : ", ") + ("theta=" + sig(theta) + " " + to_string(crit.liminf) + "/" +
                                            to_string(dk.liminf));
  }
  r.pass = ok;
  r.detail = "r = 2, n0 = 10, k <= 10, critlow/D_k: " + parts;
  r.measured = {{"classes", classes}};
  return r;
}

CriterionResult c13_primes(Context&) {
  auto r = make_result(13, "prime-window");
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::int64_t kMax = 1'000'000;
  std::int64_t n0 = 0, failures = 0, mismatches = 0;
  {
    ThreadScope single(1);
    const PrimeTable table(2 * kMax);
    n0 = prime_window_threshold(table, kMax);
    for (std::int64_t n = std::max<std::int64_t>(n0, 2); n <= kMax; ++n)
      if (static_cast<double>(table.count(n, 2 * n)) < n / (2 * std::log(static_cast<double>(n)))) ++failures;
    for (std::int64_t n = 2; n <= kMax; n += 4999)
      if (static_cast<std::int64_t>(primes_in_window(n).size()) != table.count(n, 2 * n)) ++mismatches;
  }
  const double secs = elapsed(t0);
  r.pass = n0 >= 2 && failures == 0 && mismatches == 0 && n0 == kPrimeWindowThreshold && secs <= 60;
  r.detail = "#primes in [n,2n) >= n/(2 ln n) for n in [n0, 10^6] with n0 = " + std::to_string(n0) +
             " (frozen " + std::to_string(kPrimeWindowThreshold) + "); segmented-sieve mismatches " +
             std::to_string(mismatches);
  r.measured = {{"n0", n0}, {"sieve_mismatches", mismatches}};
  return r;
}

using CriterionFn = CriterionResult (*)(Context&);
constexpr CriterionFn kCriteria[] = {c1_discrepancy, c2_st_bound, c3_union_bound, c4_gset,      c5_cantor,
                                     c6_separation,  c7_children, c8_witness,     c9_sumset,    c10_hcost,
                                     c11_boxdim,     c12_critlow, c13_primes};

bool selected(const AcceptanceConfig& cfg, int id) {
  return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), id) != cfg.only.end();
}

std::vector<CriterionResult> run_core(const AcceptanceConfig& cfg,
                                      const std::function<void(const CriterionResult&)>& on_result) {
  Context ctx;
  ctx.seed = cfg.seed;
  std::vector<CriterionResult> out;
  for (int id = 1; id < kCriterionCount; ++id) {
    if (!selected(cfg, id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = kCriteria[id - 1](ctx);
    } catch (const std::exception& e) {
      res.id = id;
      res.pass = false;
      res.detail = std::string("error: ") + e.what();
    }
    res.seconds = elapsed(t0);
    if (on_result) on_result(res);
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  auto out = run_core(cfg, on_result);
  if (!selected(cfg, kCriterionCount)) return out;

  const auto t0 = std::chrono::steady_clock::now();
  auto det = make_result(kCriterionCount, "determinism");
  AcceptanceConfig sub = cfg;
  if (!cfg.only.empty()) sub.only.erase(std::remove(sub.only.begin(), sub.only.end(), kCriterionCount), sub.only.end());
  if (cfg.only.empty() || !sub.only.empty()) {
    const std::string base = dump(results_json(out));
    std::vector<int> differing;
    std::string counts;
    for (int t : cfg.determinism_threads) {
      counts += (counts.empty() ? "" : ", ") + std::to_string(t);
      if (t == parallelism()) continue;
      ThreadScope scope(t);
      if (dump(results_json(run_core(sub, {}))) != base) differing.push_back(t);
    }
    det.pass = differing.empty();
    det.detail = "serialized results of criteria 1-13 at threads {" + counts + "}: " +
                 (differing.empty() ? std::string("identical") : std::to_string(differing.size()) + " differ");
    det.measured = {{"threads", cfg.determinism_threads}, {"differing", differing}};
  } else {
    det.pass = false;
    det.detail = "nothing to compare: no other criterion selected";
  }
  det.seconds = elapsed(t0);
  if (on_result) on_result(det);
  out.push_back(std::move(det));
  return out;
}

std::string render_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.name + ": " + r.detail;
}

std::string render_lines(const std::vector<CriterionResult>& rs) {
  std::string out;
  for (const auto& r : rs) out += render_line(r) + "\n";
  return out;
}

Json results_json(const std::vector<CriterionResult>& rs, bool with_timing) {
  Json arr = Json::array();
  for (const auto& r : rs) {
    Json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"measured", r.measured}};
    if (with_timing) j["seconds"] = r.seconds;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace smallf

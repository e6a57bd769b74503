#include "smallf/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "smallf/parallel.hpp"
#include "smallf/sequences.hpp"

namespace smallf {

namespace {

bool tail_bounds(std::size_t n, std::size_t& first) {
  if (n < 2) return false;
  const std::size_t t = std::min(n, std::max<std::size_t>(2, n / 4));
  first = n - t;
  return true;
}

Rational rational_grid(double x, const BigInt& scale) {
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), std::floor(x * scale.get_d()));
  return Rational(num, scale);
}

}  // namespace

CantorSchedule::CantorSchedule(std::vector<std::int64_t> m_, std::vector<Rational> eps_)
    : m(std::move(m_)), eps(std::move(eps_)) {
  if (m.size() != eps.size()) throw PreconditionError("CantorSchedule: m and eps differ in length");
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] < 1) throw PreconditionError("CantorSchedule: m_" + std::to_string(k + 1) + " < 1");
    if (eps[k].sign() <= 0) throw PreconditionError("CantorSchedule: eps_" + std::to_string(k + 1) + " <= 0");
    if (k > 0 && !(eps[k] < eps[k - 1]))
      throw PreconditionError("CantorSchedule: eps must strictly decrease (k = " + std::to_string(k + 1) + ")");
  }
}

CantorSchedule CantorSchedule::middle_thirds(int K) {
  if (K < 0) throw PreconditionError("middle_thirds: K must be >= 0");
  std::vector<std::int64_t> m(static_cast<std::size_t>(K), 2);
  std::vector<Rational> eps;
  for (int k = 1; k <= K; ++k) eps.push_back(pow(Rational(1, 3), static_cast<unsigned>(k)));
  return CantorSchedule(std::move(m), std::move(eps));
}

CantorSchedule CantorSchedule::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("m") || !j.contains("eps")) throw PreconditionError("schedule JSON needs \"m\" and \"eps\"");
  std::vector<std::int64_t> m = j.at("m").get<std::vector<std::int64_t>>();
  std::vector<Rational> eps;
  for (const auto& e : j.at("eps")) {
    if (e.is_string()) {
      eps.push_back(Rational::parse(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      eps.push_back(Rational(e.get<long long>()));
    } else {
      // Decimal as written in the document, not its binary approximation.
      eps.push_back(Rational::parse(e.dump()));
    }
  }
  return CantorSchedule(std::move(m), std::move(eps));
}

std::string CantorSchedule::json() const {
  nlohmann::json j;
  j["m"] = m;
  std::vector<std::string> e;
  for (const auto& x : eps) e.push_back(x.str());
  j["eps"] = e;
  return j.dump();
}

std::string to_string(LiminfClass c) {
  switch (c) {
    case LiminfClass::Positive: return "positive";
    case LiminfClass::Zero: return "zero";
    case LiminfClass::Undetermined: return "undetermined";
  }
  return "?";
}

LiminfClass classify_liminf(const std::vector<double>& logs) {
  std::size_t first = 0;
  if (!tail_bounds(logs.size(), first)) return LiminfClass::Undetermined;
  bool nondec = true, dec = true;
  for (std::size_t i = first + 1; i < logs.size(); ++i) {
    const double tol = 1e-9 * std::max(1.0, std::fabs(logs[i - 1]));
    if (logs[i] < logs[i - 1] - tol) nondec = false;
    if (!(logs[i] < logs[i - 1] - tol)) dec = false;
  }
  if (nondec) return LiminfClass::Positive;
  if (dec) return LiminfClass::Zero;
  return LiminfClass::Undetermined;
}

LiminfClass classify_liminf(const std::vector<SignedTower>& logs) {
  std::size_t first = 0;
  if (!tail_bounds(logs.size(), first)) return LiminfClass::Undetermined;
  bool nondec = true, dec = true;
  for (std::size_t i = first + 1; i < logs.size(); ++i) {
    if (!logs[i].resolved() || !logs[i - 1].resolved()) return LiminfClass::Undetermined;
    if (logs[i] < logs[i - 1]) nondec = false;
    if (!(logs[i] < logs[i - 1])) dec = false;
  }
  if (nondec) return LiminfClass::Positive;
  if (dec) return LiminfClass::Zero;
  return LiminfClass::Undetermined;
}

DkSequence dk_sequence(const CantorSchedule& s, const DimensionFunction& h) {
  DkSequence out;
  double max_x = 0, sum_log_m = 0;
  std::vector<double> Ls;
  for (int k = 0; k < s.levels(); ++k) {
    const double L = -(std::log(static_cast<double>(s.m[static_cast<std::size_t>(k)])) +
                       log_abs(s.eps[static_cast<std::size_t>(k)]));
    const double x = std::exp(-L);
    if (!(x <= h.domain_max()))
      throw PreconditionError("dk_sequence: eps_k m_k = " + std::to_string(x) + " outside the domain of " + h.str() +
                              " at k = " + std::to_string(k + 1));
    max_x = std::max(max_x, x);
    Ls.push_back(L);
  }
  if (s.levels() > 0 && !h.is_concave_on(max_x))
    throw PreconditionError("dk_sequence: " + h.str() + " is not concave on (0, " + std::to_string(max_x) + "]");
  for (int k = 0; k < s.levels(); ++k) {
    out.log_d.push_back(sum_log_m + h.log_eval_at(Ls[static_cast<std::size_t>(k)]));
    sum_log_m += std::log(static_cast<double>(s.m[static_cast<std::size_t>(k)]));
  }
  out.liminf = classify_liminf(out.log_d);
  return out;
}

TowerDkSequence ex48_dk_sequence(double r, double n0, const DimensionFunction& h, int K) {
  if (K < 0) throw PreconditionError("ex48_dk_sequence: K must be >= 0");
  const auto P = ex48_powers(r, n0, K);
  const long double tr = 2.0L / r, c0 = std::pow(2.0L, tr);
  using F = Ex48Form;
  // ln P_j = (2/r) ln n_j, with ln n_j = j P_{j-1}.
  auto lnP = [&](int j) { return j == 0 ? F::constant(tr * std::log(static_cast<long double>(n0))) : F::power(j - 1, tr * j); };
  // ln L from the leading term of L, plus the relative correction when it is representable.
  auto log_form = [&](const F& L) {
    const int j = L.lead();
    if (j < 0) return F::constant(std::log(L.constant_term()));
    const long double a = L.coefficient(j);
    if (!(a > 0)) throw PreconditionError("ex48_dk_sequence: non-positive leading coefficient");
    F out = F::constant(std::log(a)) + lnP(j);
    const long double lead = a * P[static_cast<std::size_t>(j)].to_long_double();
    const long double rest = (L - F::power(j, a)).eval(P).to_long_double();
    if (std::isfinite(lead) && std::isfinite(rest)) out += F::constant(std::log1p(rest / lead));
    return out;
  };

  TowerDkSequence out;
  const double L_allowed = std::isinf(h.domain_max()) ? -HUGE_VAL : -std::log(h.domain_max());
  std::vector<F> Ls, logms;
  double L_min = HUGE_VAL;
  for (int k = 1; k <= K; ++k) {
    const F ln_n = F::power(k - 1, k);
    F logm = 2.0L * ln_n - F::constant(std::log(6.0L) + std::log(static_cast<long double>(k))) - lnP(k - 1) -
             F::power(k - 1, c0);
    const bool clamp = logm.eval(P) < SignedTower::from_real(0);
    if (clamp) logm = F();
    const F L = F::constant(std::log(8.0L)) + 2.0L * ln_n - logm;
    const SignedTower Lv = L.eval(P);
    if (Lv < SignedTower::from_real(L_allowed))
      throw PreconditionError("ex48_dk_sequence: eps_k m_k outside the domain of " + h.str() + " at k = " +
                              std::to_string(k));
    L_min = std::min(L_min, Lv.to_double());
    out.clamped.push_back(clamp);
    out.log_m.push_back(logm.eval(P));
    Ls.push_back(L);
    logms.push_back(logm);
  }
  if (K > 0 && std::isfinite(L_min) && !h.is_concave_on(std::exp(-L_min)))
    throw PreconditionError("ex48_dk_sequence: " + h.str() + " is not concave on the schedule's range");
  F sum;
  for (int k = 1; k <= K; ++k) {
    const F& L = Ls[static_cast<std::size_t>(k - 1)];
    F logd = sum - static_cast<long double>(h.a()) * L;
    if (h.b() != 0) logd = logd - static_cast<long double>(h.b()) * log_form(L);
    out.log_d.push_back(logd.eval(P));
    sum += logms[static_cast<std::size_t>(k - 1)];
  }
  out.liminf = classify_liminf(out.log_d);
  return out;
}

ChildGenerator middle_thirds_generator() {
  return [](const Interval& p, int) {
    const Rational third = p.length() / Rational(3);
    return std::vector<Interval>{Interval(p.lo, p.lo + third), Interval(p.hi - third, p.hi)};
  };
}

CantorHypothesisError::CantorHypothesisError(Kind kind, int level, Interval where, const std::string& what)
    : PreconditionError(what), kind_(kind), level_(level), where_(std::move(where)) {}

NestedFamily build_nested(const CantorSchedule& s, const ChildGenerator& gen) {
  using K = CantorHypothesisError::Kind;
  auto where = [](const Interval& i) { return "[" + i.lo.str() + ", " + i.hi.str() + "]"; };
  NestedFamily f;
  f.levels.push_back(IntervalSet::unit());
  f.parent.emplace_back();
  std::size_t total = 1;
  for (int k = 1; k <= s.levels(); ++k) {
    const IntervalSet& prev = f.levels.back();
    std::vector<Interval> items;
    std::vector<std::size_t> parents;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      auto kids = gen(prev[i], k);
      std::sort(kids.begin(), kids.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      if (static_cast<std::int64_t>(kids.size()) < s.m[static_cast<std::size_t>(k - 1)])
        throw CantorHypothesisError(K::Children, k, prev[i],
                                    "level " + std::to_string(k) + ": " + where(prev[i]) + " has " +
                                        std::to_string(kids.size()) + " children, needs " +
                                        std::to_string(s.m[static_cast<std::size_t>(k - 1)]));
      for (auto& c : kids) {
        if (!prev[i].contains(c))
          throw CantorHypothesisError(K::Nesting, k, c,
                                      "level " + std::to_string(k) + ": " + where(c) + " not inside " + where(prev[i]));
        items.push_back(std::move(c));
        parents.push_back(i);
      }
      if (total + items.size() > kNestedBudget)
        throw CantorHypothesisError(K::Budget, k, prev[i],
                                    "build_nested: more than " + std::to_string(kNestedBudget) + " intervals");
    }
    const Rational& eps = s.eps[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 1; i < items.size(); ++i)
      if (items[i].lo - items[i - 1].hi < eps)
        throw CantorHypothesisError(K::Gap, k, items[i - 1],
                                    "level " + std::to_string(k) + ": gap after " + where(items[i - 1]) + " is " +
                                        (items[i].lo - items[i - 1].hi).str() + " < eps_k = " + eps.str());
    total += items.size();
    f.levels.emplace_back(std::move(items));
    f.parent.push_back(std::move(parents));
  }
  return f;
}

MassDistribution MassDistribution::from_family(const NestedFamily& f, const CantorSchedule& s) {
  if (static_cast<int>(f.levels.size()) != s.levels() + 1)
    throw PreconditionError("MassDistribution: family depth does not match the schedule");
  MassDistribution d;
  d.schedule = s;
  d.levels.push_back(f.levels[0]);
  d.parent.emplace_back();
  d.unit_mass.push_back(Rational(1));
  // retained[i]: new index of f.levels[k][i], or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> retained(f.levels[0].size(), 0);
  for (std::size_t i = 0; i < retained.size(); ++i) retained[i] = i;
  for (int k = 1; k <= s.levels(); ++k) {
    const auto mk = s.m[static_cast<std::size_t>(k - 1)];
    const auto& lvl = f.levels[static_cast<std::size_t>(k)];
    const auto& par = f.parent[static_cast<std::size_t>(k)];
    std::vector<Interval> keep;
    std::vector<std::size_t> keep_parent;
    std::vector<std::size_t> next(lvl.size(), npos);
    std::vector<std::int64_t> taken(d.levels.back().size(), 0);
    std::vector<std::size_t> begin(d.levels.back().size() + 1, 0);
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      const std::size_t p = retained[par[i]];
      if (p == npos || taken[p] >= mk) continue;
      ++taken[p];
      next[i] = keep.size();
      keep.push_back(lvl[i]);
      keep_parent.push_back(p);
    }
    for (std::size_t p : keep_parent) ++begin[p + 1];
    for (std::size_t p = 1; p < begin.size(); ++p) begin[p] += begin[p - 1];
    d.child_begin.push_back(std::move(begin));
    d.levels.emplace_back(std::move(keep));
    d.parent.push_back(std::move(keep_parent));
    d.unit_mass.push_back(d.unit_mass.back() / Rational(static_cast<long long>(mk)));
    retained = std::move(next);
  }
  return d;
}

Rational mass_of_interval(const MassDistribution& d, const Interval& u) {
  const int K = static_cast<int>(d.levels.size()) - 1;
  std::function<Rational(int, std::size_t)> descend = [&](int k, std::size_t i) -> Rational {
    const Interval& I = d.levels[static_cast<std::size_t>(k)][i];
    if (!I.intersects(u)) return Rational(0);
    const Rational& w = d.unit_mass[static_cast<std::size_t>(k)];
    if (u.contains(I)) return w;
    if (k == K) {
      if (I.length().sign() == 0) return w;
      const Rational overlap = min(I.hi, u.hi) - max(I.lo, u.lo);
      return w * overlap / I.length();
    }
    Rational total(0);
    const auto& cb = d.child_begin[static_cast<std::size_t>(k)];
    for (std::size_t c = cb[i]; c < cb[i + 1]; ++c) total += descend(k + 1, c);
    return total;
  };
  Rational total(0);
  for (std::size_t i = 0; i < d.levels[0].size(); ++i) total += descend(0, i);
  return total;
}

namespace {
// The k with eps_k < |U| <= eps_{k-1}, or 0 when |U| <= eps_K.
int bound_level(const MassDistribution& d, const Rational& len) {
  const auto& eps = d.schedule.eps;
  for (int k = 1; k <= d.schedule.levels(); ++k)
    if (eps[static_cast<std::size_t>(k - 1)] < len && (k == 1 || len <= eps[static_cast<std::size_t>(k - 2)]))
      return k;
  return 0;
}
}  // namespace

std::optional<Rational> mass_bound(const MassDistribution& d, const Interval& u) {
  const Rational len = u.length();
  const int k = bound_level(d, len);
  if (k == 0) return std::nullopt;
  const Rational by_gaps = Rational(2) * len / d.schedule.eps[static_cast<std::size_t>(k - 1)];
  const Rational by_count(static_cast<long long>(d.schedule.m[static_cast<std::size_t>(k - 1)]));
  return min(by_count, by_gaps) * d.unit_mass[static_cast<std::size_t>(k)];
}

std::int64_t level_intervals_meeting(const MassDistribution& d, const Interval& u, int k) {
  if (k < 0 || k >= static_cast<int>(d.levels.size())) throw PreconditionError("level_intervals_meeting: bad level");
  const auto [a, b] = d.levels[static_cast<std::size_t>(k)].meeting(u);
  return static_cast<std::int64_t>(b - a);
}

std::vector<Interval> sample_intervals(const MassDistribution& d, const DimensionFunction& h, std::size_t count,
                                       std::uint64_t seed) {
  const int K = d.schedule.levels();
  const double lmin = K == 0 ? 1e-3 : std::exp(log_abs(d.schedule.eps[static_cast<std::size_t>(K - 1)]));
  const double lmax = std::min(1.0, h.domain_max());
  const double lo_log = std::log(std::min(lmin, lmax)), hi_log = std::log(lmax);
  // Dyadic grid fine enough to resolve the smallest length.
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(std::max(40.0, 30 - std::log2(lmin))));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Interval> out;
  out.reserve(count);
  const Rational one(1);
  while (out.size() < count) {
    const double len = std::exp(lo_log + (hi_log - lo_log) * unit(rng));
    const double lo = (1 - len) * unit(rng);
    const Rational a = rational_grid(lo, scale);
    const Rational b = min(one, a + rational_grid(len, scale));
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

MdpReport verify_mdp(const MassDistribution& d, const DimensionFunction& h, std::size_t sample_count,
                     std::uint64_t seed) {
  MdpReport rep;
  const auto us = sample_intervals(d, h, sample_count, seed);
  const auto ratios = parallel_map(us.size(), [&](std::size_t i) {
    const double len = us[i].length().to_double();
    return mass_of_interval(d, us[i]).to_double() / h.eval(len);
  });
  rep.samples = us.size();
  for (std::size_t i = 0; i < ratios.size(); ++i)
    if (ratios[i] > rep.max_ratio) {
      rep.max_ratio = ratios[i];
      rep.witness = us[i];
    }
  for (std::size_t k = 0; k < d.levels.size(); ++k) {
    if (d.levels[k].empty()) break;
    const double len = d.levels[k][0].length().to_double();
    if (!h.in_domain(len)) continue;
    rep.level_ratios.push_back(d.unit_mass[k].to_double() / h.eval(len));
  }
  const auto& lr = rep.level_ratios;
  if (lr.size() >= 3) {
    const std::size_t first = lr.size() - std::max<std::size_t>(2, lr.size() / 4);
    bool growing = true;
    for (std::size_t i = first + 1; i < lr.size(); ++i)
      if (!(lr[i] > lr[i - 1] * (1 + 1e-9))) growing = false;
    rep.unbounded = growing && lr.back() > 2 * lr.front();
  }
  const int K = d.schedule.levels();
  const double xlo = K == 0 ? 1e-3 : std::exp(log_abs(d.schedule.eps[static_cast<std::size_t>(K - 1)]));
  const double xhi = std::min(0.5, h.domain_max() / 2);
  for (int i = 0; i <= 200 && xlo < xhi; ++i) {
    const double x = std::exp(std::log(xlo) + (std::log(xhi) - std::log(xlo)) * i / 200);
    rep.doubling_constant = std::max(rep.doubling_constant, h.eval(2 * x) / h.eval(x));
  }
  return rep;
}

double classical_dim_estimate(const CantorSchedule& s) {
  const int K = s.levels();
  if (K < 2) throw PreconditionError("classical_dim_estimate: needs K >= 2");
  std::vector<double> ratios;
  double num = std::log(static_cast<double>(s.m[0]));
  for (int k = 2; k <= K; ++k) {
    const double den = -(std::log(static_cast<double>(s.m[static_cast<std::size_t>(k - 1)])) +
                         log_abs(s.eps[static_cast<std::size_t>(k - 1)]));
    if (!(den > 0)) throw PreconditionError("classical_dim_estimate: m_k eps_k >= 1 at k = " + std::to_string(k));
    ratios.push_back(num / den);
    num += std::log(static_cast<double>(s.m[static_cast<std::size_t>(k - 1)]));
  }
  const std::size_t tail = std::max<std::size_t>(1, ratios.size() / 4);
  return *std::min_element(ratios.end() - static_cast<std::ptrdiff_t>(tail), ratios.end());
}

}  // namespace smallf

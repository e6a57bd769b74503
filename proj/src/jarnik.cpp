#include "smallf/jarnik.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "smallf/format.hpp"
#include "smallf/parallel.hpp"
#include "smallf/primes.hpp"
#include "smallf/sequences.hpp"

namespace smallf {

namespace {

BigInt ipow(std::int64_t base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

// g(x) >= rhs, exactly when g is an integer power.
bool g_at_least(const ApproxFunction& g, std::int64_t x, const BigInt& rhs) {
  if (g.integral()) return ipow(x, static_cast<unsigned long>(g.param())) >= rhs;
  return g.eval(static_cast<long double>(x)) >= static_cast<long double>(rhs.get_d());
}

std::string g_value_str(const ApproxFunction& g, std::int64_t x) {
  if (g.integral()) return ipow(x, static_cast<unsigned long>(g.param())).get_str();
  return fmt_sig(static_cast<double>(g.eval(static_cast<long double>(x))), 12);
}

std::pair<std::int64_t, std::int64_t> range_inside(const Interval& I, std::int64_t p, const Rational& rho) {
  const Rational P(static_cast<long long>(p));
  const BigInt lo = (P * (I.lo + rho)).ceil();
  const BigInt hi = (P * (I.hi - rho)).floor();
  const std::int64_t rmin = lo < 1 ? 1 : (lo > big(p) ? p : to_int64(lo));
  const std::int64_t rmax = hi > big(p - 1) ? p - 1 : (hi < 0 ? -1 : to_int64(hi));
  return {rmin, rmax};
}

// Number of r in [1, p-1] with [r/p - rho, r/p + rho] inside I.
std::int64_t count_inside(const Interval& I, std::int64_t p, const Rational& rho) {
  const auto [a, b] = range_inside(I, p, rho);
  return b >= a ? b - a + 1 : 0;
}

Interval around(std::int64_t r, std::int64_t p, const Rational& rho) {
  const Rational c(static_cast<long long>(r), static_cast<long long>(p));
  return Interval(c - rho, c + rho);
}

}  // namespace

ApproxFunction ApproxFunction::power(double s) {
  if (!(s > 2)) throw PreconditionError("ApproxFunction: power needs s > 2, got " + fmt_double(s));
  return ApproxFunction(Kind::Power, s);
}

ApproxFunction ApproxFunction::exppow(double r) {
  if (!(r > 0)) throw PreconditionError("ApproxFunction: exppow needs r > 0, got " + fmt_double(r));
  return ApproxFunction(Kind::ExpPow, r);
}

ApproxFunction ApproxFunction::parse(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw PreconditionError("ApproxFunction: cannot parse \"" + text + "\"");
    return v;
  };
  if (text.rfind("x^", 0) == 0) return power(number(text.substr(2)));
  for (const char* prefix : {"exppow:", "g_r:"}) {
    const std::string pre(prefix);
    if (text.rfind(pre, 0) == 0) return exppow(number(text.substr(pre.size())));
  }
  throw PreconditionError("ApproxFunction: expected x^s or exppow:r, got \"" + text + "\"");
}

bool ApproxFunction::integral() const {
  return kind_ == Kind::Power && param_ == std::floor(param_) && param_ <= 64;
}

long double ApproxFunction::eval(long double x) const {
  if (kind_ == Kind::Power) return std::pow(x, static_cast<long double>(param_));
  return std::exp(std::pow(x, 2.0L / param_));
}

long double ApproxFunction::inverse(long double y) const {
  if (kind_ == Kind::Power) {
    if (y < 0) throw DomainError("ApproxFunction::inverse: negative argument");
    return std::pow(y, 1.0L / param_);
  }
  if (y < 1) throw DomainError("ApproxFunction::inverse: exppow takes values >= 1");
  return std::pow(std::log(y), param_ / 2.0L);
}

BigInt ApproxFunction::ceil_at(std::int64_t q) const {
  if (q < 1) throw PreconditionError("ApproxFunction::ceil_at: q must be >= 1");
  if (integral()) return ipow(q, static_cast<unsigned long>(param_));
  const long double v = eval(static_cast<long double>(q));
  if (!std::isfinite(v)) throw DomainError("ApproxFunction::ceil_at: g(" + std::to_string(q) + ") overflows");
  const long double c = std::ceil(v);
  if (c < 9e18L) return big(static_cast<std::int64_t>(c));
  BigInt out;
  mpz_set_d(out.get_mpz_t(), static_cast<double>(c));
  return out;
}

SignedTower ApproxFunction::log_eval(const TowerScalar& x) const {
  if (kind_ == Kind::Power) {
    if (!(TowerScalar::from_real(1) < x)) return SignedTower::from_real(param_ * std::log(x.to_long_double()));
    return SignedTower(1, tower_scale(x.log(), param_));
  }
  return SignedTower(1, tower_pow(x, 2.0L / param_));
}

DimensionFunction ApproxFunction::target() const {
  if (kind_ == Kind::Power) return DimensionFunction(2.0 / param_, 0);
  return DimensionFunction(0, param_);
}

double ApproxFunction::subadditivity_constant(long double ymax, int grid) const {
  double worst = 0;
  const long double lo = std::log(2.0L), hi = std::log(ymax);
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const long double a = std::exp(lo + (hi - lo) * i / grid), b = std::exp(lo + (hi - lo) * j / grid);
      worst = std::max(worst, static_cast<double>(inverse(a * b) / (inverse(a) + inverse(b))));
    }
  return worst;
}

std::string ApproxFunction::str() const {
  return (kind_ == Kind::Power ? "x^" : "exppow:") + fmt_double(param_);
}

IntervalSet build_Gq(std::int64_t q, const ApproxFunction& g) {
  if (q < 1) throw PreconditionError("build_Gq: q must be >= 1");
  const BigInt G = g.ceil_at(q);
  if (!(G > 2 * big(q)))
    throw PreconditionError("build_Gq: intervals overlap, g(" + std::to_string(q) + ") = " + G.get_str() +
                            " <= 2q = " + std::to_string(2 * q));
  const Rational rho(BigInt(1), G);
  std::vector<Interval> items;
  items.emplace_back(Rational(0), rho);
  for (std::int64_t r = 1; r < q; ++r) items.push_back(around(r, q, rho));
  items.emplace_back(Rational(1) - rho, Rational(1));
  return IntervalSet(std::move(items));
}

IntervalSet build_Gq_prime(std::int64_t q, const ApproxFunction& g) {
  const IntervalSet full = build_Gq(q, g);
  return IntervalSet(std::vector<Interval>(full.begin() + 1, full.end() - 1));
}

HnSet build_Hn(std::int64_t n, const ApproxFunction& g) {
  if (n < 1) throw PreconditionError("build_Hn: n must be >= 1");
  const BigInt need = 16 * big(n) * big(n);
  if (!g_at_least(g, n, need))
    throw PreconditionError("build_Hn: needs g(n) >= 16 n^2, but g(" + std::to_string(n) + ") = " +
                            g_value_str(g, n) + " < " + need.get_str());
  HnSet h;
  h.n = n;
  h.primes = primes_in_window(n);
  if (h.primes.empty()) throw PreconditionError("build_Hn: no primes in [" + std::to_string(n) + ", " +
                                                std::to_string(2 * n) + ")");
  struct Key {
    std::int64_t r, p;
  };
  std::vector<Key> keys;
  for (auto p : h.primes)
    for (std::int64_t r = 1; r < p; ++r) keys.push_back({r, p});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) { return a.r * b.p < b.r * a.p; });
  std::vector<Rational> rho;
  for (auto p : h.primes) rho.emplace_back(BigInt(1), g.ceil_at(p));
  std::vector<Interval> items;
  items.reserve(keys.size());
  for (const auto& k : keys) {
    const auto idx = static_cast<std::size_t>(std::lower_bound(h.primes.begin(), h.primes.end(), k.p) - h.primes.begin());
    items.push_back(around(k.r, k.p, rho[idx]));
    h.prime.push_back(k.p);
    h.numer.push_back(k.r);
  }
  h.set = IntervalSet(std::move(items));
  return h;
}

SeparationReport min_separation(const HnSet& h, const ApproxFunction& g) {
  SeparationReport rep;
  const BigInt n2 = big(h.n) * big(h.n);
  rep.gap_bound = Rational(BigInt(1), 8 * n2);
  rep.center_bound = Rational(BigInt(1), 4 * n2);
  bool first = true;
  for (auto p : h.primes) {
    const Rational gap = Rational(1, static_cast<long long>(p)) - Rational(BigInt(2), g.ceil_at(p));
    if (first || gap < rep.same_prime_gap) rep.same_prime_gap = gap;
    first = false;
  }
  for (std::size_t i = 0; i < h.set.size(); ++i) {
    std::size_t j = i + 1;
    while (j < h.set.size() && h.prime[j] == h.prime[i]) ++j;
    if (j == h.set.size()) continue;
    const Rational gap = h.set[j].lo - h.set[i].hi;
    const Rational center = Rational(static_cast<long long>(h.numer[j]), static_cast<long long>(h.prime[j])) -
                            Rational(static_cast<long long>(h.numer[i]), static_cast<long long>(h.prime[i]));
    if (!rep.min_gap || gap < *rep.min_gap) {
      rep.min_gap = gap;
      rep.witness = std::make_pair(i, j);
    }
    if (!rep.min_center || center < *rep.min_center) rep.min_center = center;
  }
  rep.pass = !(rep.same_prime_gap < rep.gap_bound) && (!rep.min_gap || !(*rep.min_gap < rep.gap_bound)) &&
             (!rep.min_center || !(*rep.min_center < rep.center_bound));
  return rep;
}

ChildrenCount count_children(const Interval& I, std::int64_t p, const ApproxFunction& g) {
  if (p < 2) throw PreconditionError("count_children: p must be >= 2");
  const Rational P(static_cast<long long>(p));
  if (!(Rational(3) < P * I.length()))
    throw PreconditionError("count_children: interval too short, |I| = " + I.length().str() + " <= 3/p");
  ChildrenCount c;
  c.count = count_inside(I, p, Rational(BigInt(1), g.ceil_at(p)));
  c.bound = (P * I.length()).to_double() / 3;
  c.pass = !(Rational(3) * Rational(static_cast<long long>(c.count)) < P * I.length());
  return c;
}

CantorSchedule JarnikLevels::schedule(bool realized) const {
  std::vector<std::int64_t> m;
  std::vector<Rational> eps;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    m.push_back(std::max<std::int64_t>(1, realized ? levels[k].min_children : levels[k].promised));
    eps.push_back(levels[k].eps);
  }
  return CantorSchedule(std::move(m), std::move(eps));
}

ChildGenerator JarnikLevels::generator() const {
  auto sets = std::make_shared<std::vector<std::optional<IntervalSet>>>();
  for (const auto& l : levels) sets->push_back(l.E);
  return [sets](const Interval& parent, int k) {
    if (k < 1 || k >= static_cast<int>(sets->size()) || !(*sets)[static_cast<std::size_t>(k)])
      throw PreconditionError("jarnik generator: level " + std::to_string(k) + " not materialized");
    const IntervalSet& E = *(*sets)[static_cast<std::size_t>(k)];
    const auto [a, b] = E.contained_in(parent);
    return std::vector<Interval>(E.begin() + static_cast<std::ptrdiff_t>(a), E.begin() + static_cast<std::ptrdiff_t>(b));
  };
}

JarnikLevels build_levels(const ApproxFunction& g, const std::vector<std::int64_t>& n, int K) {
  if (K < 0) throw PreconditionError("build_levels: K must be >= 0");
  if (static_cast<int>(n.size()) < K) throw PreconditionError("build_levels: sequence shorter than K");
  JarnikLevels out;
  out.g = g;
  JarnikLevel l0;
  l0.E = IntervalSet::unit();
  l0.interval_count = 1;
  l0.promised = 1;
  l0.eps = Rational(1);
  out.levels.push_back(std::move(l0));

  for (int k = 1; k <= K; ++k) {
    const std::int64_t nk = n[static_cast<std::size_t>(k - 1)];
    JarnikLevel L;
    L.n = nk;
    L.eps = Rational(BigInt(1), 8 * big(nk) * big(nk));
    const BigInt need = 16 * big(nk) * big(nk);
    if (!g_at_least(g, nk, need))
      throw PreconditionError("build_levels: level " + std::to_string(k) + " needs g(n_k) >= 16 n_k^2");
    long double g_prev2 = 1;
    if (k >= 2) {
      const std::int64_t np = n[static_cast<std::size_t>(k - 2)];
      L.flag_a = g_at_least(g, 2 * np, BigInt(0)) &&
                 (g.integral() ? 3 * ipow(2 * np, static_cast<unsigned long>(g.param())) <= big(nk)
                               : 3 * g.eval(2.0L * np) <= static_cast<long double>(nk));
      L.flag_b = std::log(static_cast<long double>(nk)) <= g.eval(static_cast<long double>(np));
      if (!L.flag_a)
        throw PreconditionError("build_levels: condition (A) fails at k = " + std::to_string(k) + ": n_k = " +
                                std::to_string(nk) + " < 3 g(2 n_{k-1}) = 3 * " + g_value_str(g, 2 * np));
      if (!L.flag_b)
        throw PreconditionError("build_levels: condition (B) fails at k = " + std::to_string(k) +
                                ": ln n_k > g(n_{k-1})");
      g_prev2 = g.eval(2.0L * np);
    }
    const long double promised =
        static_cast<long double>(nk) * nk / (6 * std::log(static_cast<long double>(nk)) * g_prev2);
    L.promised = static_cast<std::int64_t>(std::floor(promised));

    const JarnikLevel& prev = out.levels.back();
    if (!prev.E)
      throw PreconditionError("build_levels: level " + std::to_string(k - 1) +
                              " exceeded the interval budget and cannot be refined");
    const IntervalSet& parents = *prev.E;
    const auto primes = primes_in_window(nk);
    if (primes.empty()) throw PreconditionError("build_levels: no primes in [n_k, 2 n_k)");
    std::vector<Rational> rho;
    for (auto p : primes) rho.emplace_back(BigInt(1), g.ceil_at(p));

    const auto counts = parallel_map(parents.size(), [&](std::size_t i) {
      std::int64_t c = 0;
      for (std::size_t j = 0; j < primes.size(); ++j) c += count_inside(parents[i], primes[j], rho[j]);
      return c;
    });
    L.parents = parents.size();
    L.min_children = counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
    L.max_children = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    for (auto c : counts) L.interval_count += static_cast<std::uint64_t>(c);
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] < L.promised)
        throw CantorHypothesisError(CantorHypothesisError::Kind::Children, k, parents[i],
                                    "build_levels: level " + std::to_string(k) + " parent [" + parents[i].lo.str() +
                                        ", " + parents[i].hi.str() + "] has " + std::to_string(counts[i]) +
                                        " children, promised " + std::to_string(L.promised));

    if (L.interval_count <= kJarnikBudget) {
      auto blocks = parallel_map(parents.size(), [&](std::size_t i) {
        struct Key {
          std::int64_t r, p;
          std::size_t j;
        };
        std::vector<Key> keys;
        for (std::size_t j = 0; j < primes.size(); ++j) {
          const auto [a, b] = range_inside(parents[i], primes[j], rho[j]);
          for (std::int64_t r = a; r <= b; ++r) keys.push_back({r, primes[j], j});
        }
        std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) { return x.r * y.p < y.r * x.p; });
        std::vector<Interval> iv;
        iv.reserve(keys.size());
        for (const auto& key : keys) iv.push_back(around(key.r, key.p, rho[key.j]));
        return iv;
      });
      std::vector<Interval> all;
      all.reserve(L.interval_count);
      for (auto& b : blocks) all.insert(all.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      L.E = IntervalSet(std::move(all));
    } else if (k < K) {
      throw PreconditionError("build_levels: level " + std::to_string(k) + " has " +
                              std::to_string(L.interval_count) + " intervals, over the budget of " +
                              std::to_string(kJarnikBudget) + " for a non-final level");
    }
    out.levels.push_back(std::move(L));
  }
  return out;
}

CritlowReport critlow_sequence(const ApproxFunction& g, const DimensionFunction& h,
                               const std::vector<TowerScalar>& seq) {
  const DimensionFunction tgt = g.target();
  const OrderRelation rel = compare(h, tgt);
  if (rel == OrderRelation::Greater)
    throw PreconditionError("critlow_sequence: " + h.str() + " is not dimensionally smaller than " + tgt.str());
  CritlowReport rep;
  rep.equivalent = rel == OrderRelation::Equivalent;
  const long double da = tgt.a() - h.a(), db = tgt.b() - h.b();
  const long double ln6 = std::log(6.0L);
  std::vector<SignedTower> logs;
  for (std::size_t k = 2; k < seq.size(); ++k) {
    // L = ln(1/x_k) with x_k = 1/(ln(n_k) g(n_{k-1})).
    const SignedTower L = SignedTower::log_of(seq[k].log()) + g.log_eval(seq[k - 1]);
    SignedTower val = SignedTower::from_real(-static_cast<long double>(k) * ln6) - 2.0L * g.log_eval(seq[k - 2]);
    if (da != 0) val = val + da * L;
    if (db != 0) val = val + db * SignedTower::log_of(L.magnitude());
    CritlowTerm t;
    t.k = static_cast<int>(k);
    t.log_value = val;
    if (g.kind() == ApproxFunction::Kind::ExpPow) {
      const long double r = g.param();
      t.log_chain = (2 * db / r) * SignedTower(1, seq[k - 1].log()) +
                    SignedTower::from_real(-static_cast<long double>(k) * ln6) - 2.0L * g.log_eval(seq[k - 2]);
    }
    logs.push_back(val);
    rep.terms.push_back(t);
  }
  rep.liminf = classify_liminf(logs);
  return rep;
}

CritlowReport critlow_ex48(double r, const DimensionFunction& h, double n0, int K) {
  const ApproxFunction g = ApproxFunction::exppow(r);
  const DimensionFunction tgt = g.target();
  const OrderRelation rel = compare(h, tgt);
  if (rel == OrderRelation::Greater)
    throw PreconditionError("critlow_ex48: " + h.str() + " is not dimensionally smaller than " + tgt.str());
  CritlowReport rep;
  rep.equivalent = rel == OrderRelation::Equivalent;
  const long double da = tgt.a() - h.a(), db = tgt.b() - h.b(), tr = 2.0L / r;
  const auto P = ex48_powers(r, n0, K);
  using F = Ex48Form;
  std::vector<SignedTower> logs;
  for (int k = 2; k <= K; ++k) {
    // ln g(n_j) = P_j; L = lnln n_k + P_{k-1} = ln k + ln P_{k-1} + P_{k-1}, ln P_{k-1} = (2/r)(k-1) P_{k-2}.
    const F lnP_prev = F::power(k - 2, tr * (k - 1));
    const F L = F::power(k - 1, 1) + F::constant(std::log(static_cast<long double>(k))) + lnP_prev;
    F lnL = lnP_prev;
    const long double lead = P[static_cast<std::size_t>(k - 1)].to_long_double();
    const long double rest = (F::constant(std::log(static_cast<long double>(k))) + lnP_prev).eval(P).to_long_double();
    if (std::isfinite(lead) && std::isfinite(rest)) lnL += F::constant(std::log1p(rest / lead));
    const F base = F::constant(-k * std::log(6.0L)) - F::power(k - 2, 2);
    F val = base;
    if (da != 0) val += da * L;
    if (db != 0) val += db * lnL;
    CritlowTerm t;
    t.k = k;
    t.log_value = val.eval(P);
    // ln of n_{k-1}^(2(r-theta)/r)/(6^k e^(2 n_{k-2}^(2/r))), with ln n_{k-1} = (k-1) P_{k-2}.
    t.log_chain = (base + F::power(k - 2, tr * db * (k - 1))).eval(P);
    logs.push_back(t.log_value);
    rep.terms.push_back(t);
  }
  rep.liminf = classify_liminf(logs);
  return rep;
}

WitnessResult witness_search(const QuadSurd& x, std::int64_t qmax, const Rational& tolerance) {
  if (x.sign() < 0 || QuadSurd(1) < x) throw PreconditionError("witness_search: x must lie in [0, 1]");
  if (qmax < 1) throw PreconditionError("witness_search: q budget must be >= 1");
  WitnessResult res;
  res.qmax = qmax;
  res.rational_input = x.is_rational();
  // Convergent recursion with exact remainders; stops once q_i would exceed qmax.
  std::int64_t p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> semi;
  QuadSurd y = x;
  while (true) {
    const BigInt a = y.floor();
    const BigInt qn = a * big(q1) + big(q2);
    if (qn > big(qmax)) {
      const std::int64_t t = q1 == 0 ? 0 : (qmax - q2) / q1;
      if (t >= 1) semi = std::make_pair(p2 + t * p1, q2 + t * q1);
      break;
    }
    const std::int64_t ai = to_int64(a);
    const std::int64_t pn = ai * p1 + p2;
    p2 = p1;
    q2 = q1;
    p1 = pn;
    q1 = to_int64(qn);
    const QuadSurd frac = y - QuadSurd(Rational(a));
    if (frac.sign() == 0) break;
    y = QuadSurd(1) / frac;
  }
  auto err = [&](std::int64_t p, std::int64_t q) {
    return (x - QuadSurd(Rational(static_cast<long long>(p), static_cast<long long>(q)))).abs();
  };
  Witness w{p1, q1, err(p1, q1)};
  if (semi) {
    const QuadSurd e = err(semi->first, semi->second);
    if (e < w.error) w = {semi->first, semi->second, e};
  }
  res.accepted = w.error < QuadSurd(tolerance);
  res.witness = w;
  return res;
}

WitnessResult witness_search(const QuadSurd& x, const std::function<double(double)>& f, std::int64_t n) {
  if (n < 1) throw PreconditionError("witness_search: n must be >= 1");
  const double fq = f(static_cast<double>(n));
  if (!(fq >= 1)) throw PreconditionError("witness_search: f(n) must be >= 1");
  return witness_search(x, static_cast<std::int64_t>(std::floor(fq)), Rational(BigInt(1), big(n) * big(n)));
}

InclusionReport verify_inclusion(const JarnikLevels& levels, std::size_t sample_count, std::uint64_t seed) {
  const int K = levels.depth();
  if (K < 1) throw PreconditionError("verify_inclusion: needs at least one level");
  const auto& top = levels.levels.back();
  if (!top.E || top.E->empty()) throw PreconditionError("verify_inclusion: E_K is not materialized");
  const IntervalSet& E = *top.E;
  InclusionReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, E.size() - 1);
  const QuadSurd s2 = QuadSurd::sqrt2();
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Interval& I = E[pick(rng)];
    rep.points.push_back(QuadSurd(I.center()) + s2 * QuadSurd(I.length() / Rational(32)));
  }
  rep.samples = rep.points.size();
  const ApproxFunction& g = levels.g;
  std::vector<Rational> tol;
  for (int k = 1; k <= K; ++k) tol.emplace_back(BigInt(1), g.ceil_at(levels.levels[static_cast<std::size_t>(k)].n));
  struct Outcome {
    std::size_t fails = 0, norm_fails = 0;
  };
  const auto outcomes = parallel_map(rep.points.size(), [&](std::size_t i) {
    Outcome o;
    for (int k = 1; k <= K; ++k) {
      const std::int64_t nk = levels.levels[static_cast<std::size_t>(k)].n;
      const auto w = witness_search(rep.points[i], 2 * nk, tol[static_cast<std::size_t>(k - 1)]);
      if (!w.accepted) {
        ++o.fails;
        continue;
      }
      if (g.integral()) {
        const auto s = static_cast<unsigned long>(g.param());
        const QuadSurd norm = QuadSurd(Rational(static_cast<long long>(w.witness->q))) * w.witness->error;
        const Rational bound(ipow(2, s), ipow(w.witness->q, s - 1));
        if (!(norm < QuadSurd(bound))) ++o.norm_fails;
      }
    }
    return o;
  });
  for (const auto& o : outcomes) {
    rep.failures += o.fails;
    rep.norm_failures += o.norm_fails;
  }
  return rep;
}

}  // namespace smallf

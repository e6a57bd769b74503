#include "smallf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smallf/format.hpp"
#include "smallf/parallel.hpp"

namespace smallf {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// A + B*sqrt2 with machine integers.
struct IntSurd {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double value() const { return static_cast<double>(a) + static_cast<double>(b) * kSqrt2; }
  QuadSurd exact() const { return QuadSurd(Rational(static_cast<long long>(a)), Rational(static_cast<long long>(b)), 2); }
};

IntSurd operator-(IntSurd x, IntSurd y) { return {x.a - y.a, x.b - y.b}; }

// Exact three-way comparison, with a double fast path for well-separated values.
int compare(IntSurd x, IntSurd y) {
  const double dx = x.value(), dy = y.value();
  if (dx < dy - 1e-9) return -1;
  if (dx > dy + 1e-9) return 1;
  return surd_sign(x.a - y.a, x.b - y.b, 2);
}

std::int64_t floor_k_sqrt2(std::int64_t k) {
  const std::int64_t t = 2 * k * k;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
  while (r * r > t) --r;
  while ((r + 1) * (r + 1) <= t) ++r;
  return r;
}

}  // namespace

std::vector<QuadSurd> discrepancy_values(int n) {
  if (n < 1) throw PreconditionError("discrepancy_values: n must be >= 1");
  std::vector<IntSurd> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) pts.push_back({-j, k});
  std::sort(pts.begin(), pts.end(), [](IntSurd x, IntSurd y) { return compare(x, y) < 0; });
  std::vector<QuadSurd> out;
  out.reserve(pts.size());
  const QuadSurd inv_n(Rational(1, n));
  for (auto p : pts) out.push_back(p.exact() * inv_n);
  return out;
}

CoveringRadius covering_radius(int n) {
  if (n < 1) throw PreconditionError("covering_radius: n must be >= 1");
  // Work with s = n * value = k sqrt2 - j. A value lies in cell [m, m+1) iff
  // j = floor(k sqrt2) - m, so cell m holds the k with floor(k sqrt2) in
  // [m, m+n-1], at offset frac(k sqrt2). Cells share one frac-sorted order of k.
  std::vector<std::int64_t> fl(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) fl[static_cast<std::size_t>(k)] = floor_k_sqrt2(k);
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t k1, std::int64_t k2) {
    return surd_sign(-(fl[static_cast<std::size_t>(k1)] - fl[static_cast<std::size_t>(k2)]), k1 - k2, 2) < 0;
  });
  std::vector<std::int64_t> ofl(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) ofl[i] = fl[static_cast<std::size_t>(order[i])];

  IntSurd best{0, 0};       // twice the covering distance
  IntSurd best_mid2{0, 0};  // twice the witness point
  bool have_best = false;
  auto offer = [&](IntSurd twice_dist, IntSurd twice_point) {
    if (!have_best || compare(twice_dist, best) > 0) {
      best = twice_dist;
      best_mid2 = twice_point;
      have_best = true;
    }
  };

  IntSurd prev{0, 0};
  bool have_prev = false;
  for (std::int64_t m = 0; m < n; ++m) {
    const std::int64_t lo = m, hi = m + n - 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::int64_t f = ofl[i];
      if (f < lo || f > hi) continue;
      const IntSurd p{m - f, order[i]};
      if (have_prev) offer(p - prev, {p.a + prev.a, p.b + prev.b});
      prev = p;
      have_prev = true;
    }
  }
  // Right end: x = n against the last point below and the first point above.
  const IntSurd end_twice{2 * (n - prev.a), -2 * prev.b};
  std::optional<IntSurd> next;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::int64_t f = ofl[i];
    if (f >= n && f <= 2 * static_cast<std::int64_t>(n) - 1) {
      next = IntSurd{n - f, order[i]};
      break;
    }
  }
  if (next && compare(*next - prev, end_twice) < 0) {
    offer(*next - prev, {next->a + prev.a, next->b + prev.b});
  } else {
    offer(end_twice, {2 * static_cast<std::int64_t>(n), 0});
  }

  CoveringRadius out;
  out.n = n;
  const QuadSurd inv_2n(Rational(1, 2LL * n));
  out.rho = best.exact() * inv_2n;
  out.rho_value = out.rho.to_double();
  out.witness = best_mid2.exact() * inv_2n;
  out.bound = std::log(static_cast<double>(n)) / (static_cast<double>(n) * n);
  // rho <= ln(n)/n^2 compared in double: rho is known to ~1e-16 relative and
  // the bound is transcendental, so ties cannot be decided exactly anyway.
  out.pass = out.rho_value <= out.bound;
  return out;
}

QuadSurd distance_to_values(int n, const QuadSurd& x) {
  std::optional<QuadSurd> best;
  const QuadSurd inv_n(Rational(1, n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const QuadSurd v = IntSurd{-j, k}.exact() * inv_n;
      QuadSurd d = (x - v).abs();
      if (!best || d < *best) best = d;
    }
  return *best;
}

DiscrepancyScan scan_discrepancy(int nmax) {
  if (nmax < 1) throw PreconditionError("scan_discrepancy: nmax must be >= 1");
  DiscrepancyScan scan;
  scan.nmax = nmax;
  scan.rows = parallel_map(static_cast<std::size_t>(nmax),
                           [](std::size_t i) { return covering_radius(static_cast<int>(i) + 1); });
  int n0 = 1;
  for (int n = nmax; n >= 1; --n)
    if (!scan.rows[static_cast<std::size_t>(n - 1)].pass) {
      n0 = n + 1;
      break;
    }
  scan.threshold = n0 > nmax ? 0 : n0;
  if (scan.threshold > 0) {
    for (int n = std::max(2, n0); n <= nmax; ++n) {
      const auto& r = scan.rows[static_cast<std::size_t>(n - 1)];
      const double ratio = r.rho_value * n * n / std::log(static_cast<double>(n));
      if (ratio > scan.max_ratio) {
        scan.max_ratio = ratio;
        scan.max_ratio_at = n;
      }
    }
  }
  return scan;
}

std::string TubeFamily::json() const {
  std::string out = "[";
  for (std::size_t i = 0; i < tubes.size(); ++i) {
    if (i) out += ",";
    out += "{\"m\":" + fmt_double(tubes[i].m) + ",\"b\":" + fmt_double(tubes[i].b) +
           ",\"delta\":" + fmt_double(tubes[i].delta) + "}";
  }
  return out + "]";
}

TubeFamily build_Gn(int n) {
  if (n < 2) throw PreconditionError("build_Gn: n must be >= 2 (delta = ln(n)/n^2 vanishes at n = 1)");
  TubeFamily fam;
  fam.n = n;
  fam.delta = std::log(static_cast<double>(n)) / (static_cast<double>(n) * n);
  fam.tubes.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      fam.tubes.push_back({(kSqrt2 * k - j) / n, static_cast<double>(j) / n, fam.delta});
  return fam;
}

GsetReport verify_gset(const TubeFamily& family, int grid) {
  if (family.tubes.empty()) throw PreconditionError("verify_gset: empty tube family");
  if (grid < 0) throw PreconditionError("verify_gset: grid size must be >= 0");
  std::vector<std::size_t> idx(family.tubes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (family.tubes[x].m != family.tubes[y].m) return family.tubes[x].m < family.tubes[y].m;
    return x < y;
  });
  std::vector<double> slopes(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) slopes[i] = family.tubes[idx[i]].m;

  GsetReport rep;
  rep.witnesses = parallel_map(static_cast<std::size_t>(grid), [&](std::size_t i) {
    SlopeWitness w;
    w.slope = grid == 1 ? 0.0 : static_cast<double>(i) / (grid - 1);
    auto it = std::lower_bound(slopes.begin(), slopes.end(), w.slope);
    std::optional<std::size_t> best;
    double best_d = 0;
    for (auto cand : {it, it == slopes.begin() ? it : it - 1}) {
      if (cand == slopes.end()) continue;
      const std::size_t t = idx[static_cast<std::size_t>(cand - slopes.begin())];
      const double d = std::fabs(w.slope - family.tubes[t].m);
      if (d <= 2 * family.tubes[t].delta && (!best || d < best_d)) {
        best = t;
        best_d = d;
      }
    }
    if (best) {
      w.tube = best;
      w.intercept = family.tubes[*best].b - (w.slope - family.tubes[*best].m) / 2;
    }
    return w;
  });
  for (const auto& w : rep.witnesses)
    if (!w.tube) ++rep.failures;
  rep.all_covered = rep.failures == 0;
  return rep;
}

TubeFamily apply_affine(const AffineMap& map, const TubeFamily& family) {
  if (!(map.delta > 0)) throw PreconditionError("apply_affine: delta must be positive");
  TubeFamily out;
  out.n = family.n;
  out.level = family.level + 1;
  out.delta = map.delta * family.delta;
  out.tubes.reserve(family.tubes.size());
  for (const auto& t : family.tubes)
    out.tubes.push_back({map.m + map.delta * t.m, map.b + map.delta * t.b, map.delta * t.delta});
  return out;
}

}  // namespace smallf

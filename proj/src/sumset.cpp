#include "smallf/sumset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smallf/parallel.hpp"
#include "smallf/rational.hpp"

namespace smallf {

namespace {

std::uint64_t power_u64(int base, int d) {
  std::uint64_t v = 1;
  for (int i = 0; i < d; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base))
      throw PreconditionError("base^depth exceeds 64 bits");
    v *= static_cast<std::uint64_t>(base);
  }
  return v;
}

}  // namespace

Parity parse_parity(const std::string& s) {
  if (s == "even-blocks-zero" || s == "even") return Parity::ZeroOnEven;
  if (s == "odd-blocks-zero" || s == "odd") return Parity::ZeroOnOdd;
  throw PreconditionError("unknown parity \"" + s + "\" (even-blocks-zero or odd-blocks-zero)");
}

std::string to_string(Parity p) { return p == Parity::ZeroOnEven ? "even-blocks-zero" : "odd-blocks-zero"; }

DigitBlockSet::DigitBlockSet(int base_, std::vector<std::int64_t> boundaries_, Parity parity_, std::vector<int> digits_)
    : base(base_), boundaries(std::move(boundaries_)), parity(parity_), digits(std::move(digits_)) {
  if (base < 2) throw PreconditionError("DigitBlockSet: base must be >= 2");
  if (!boundaries.empty() && boundaries.front() == 0) boundaries.erase(boundaries.begin());
  for (std::size_t i = 0; i < boundaries.size(); ++i)
    if (boundaries[i] <= (i == 0 ? 0 : boundaries[i - 1]))
      throw PreconditionError("DigitBlockSet: boundaries must be positive and strictly increasing");
  if (digits.empty())
    for (int d = 0; d < base; ++d) digits.push_back(d);
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  for (int d : digits)
    if (d < 0 || d >= base) throw PreconditionError("DigitBlockSet: digit " + std::to_string(d) + " outside the base");
}

DigitBlockSet DigitBlockSet::uniform(int base, std::vector<int> digits) {
  return DigitBlockSet(base, {}, Parity::ZeroOnEven, std::move(digits));
}

bool DigitBlockSet::is_free(std::int64_t j) const {
  if (j < 1) throw PreconditionError("DigitBlockSet: positions start at 1");
  if (boundaries.empty()) return true;
  if (j > boundaries.back()) throw PreconditionError("DigitBlockSet: position " + std::to_string(j) + " beyond the schedule");
  // Block index k: number of boundaries strictly below j.
  const auto k = std::lower_bound(boundaries.begin(), boundaries.end(), j) - boundaries.begin();
  const bool even = k % 2 == 0;
  return parity == Parity::ZeroOnEven ? !even : even;
}

std::int64_t DigitBlockSet::free_positions(std::int64_t depth) const {
  if (depth < 0) throw PreconditionError("free_positions: negative depth");
  if (boundaries.empty()) return depth;
  if (depth > boundaries.back()) throw PreconditionError("free_positions: depth beyond the schedule");
  std::int64_t count = 0, lo = 0;
  for (std::size_t k = 0; k < boundaries.size() && lo < depth; ++k) {
    const std::int64_t hi = std::min(depth, boundaries[k]);
    const bool even = k % 2 == 0;
    if (parity == Parity::ZeroOnEven ? !even : even) count += hi - lo;
    lo = boundaries[k];
  }
  return count;
}

std::int64_t ell_alternating(const std::vector<std::int64_t>& m, int k) {
  if (k < 2 || k > static_cast<int>(m.size())) throw PreconditionError("ell_alternating: need 2 <= k <= K");
  std::int64_t out = 0;
  for (int i = k; i >= 2; i -= 2) out += m[static_cast<std::size_t>(i - 1)] - m[static_cast<std::size_t>(i - 2)];
  return out;
}

TruncatedSet truncate(const DigitBlockSet& set, int depth) {
  if (depth < 0) throw PreconditionError("truncate: negative depth");
  if (set.max_depth() >= 0 && depth > set.max_depth())
    throw PreconditionError("truncate: depth " + std::to_string(depth) + " beyond the last block boundary " +
                            std::to_string(set.max_depth()));
  power_u64(set.base, depth);
  TruncatedSet out;
  out.base = set.base;
  out.depth = depth;
  out.residues = {0};
  for (int j = 1; j <= depth; ++j) {
    const bool free = set.is_free(j);
    const std::size_t width = free ? set.digits.size() : 1;
    if (out.residues.size() * width > kResidueBudget)
      throw PreconditionError("truncate: more than " + std::to_string(kResidueBudget) + " residues");
    std::vector<std::uint64_t> next;
    next.reserve(out.residues.size() * width);
    for (auto r : out.residues) {
      if (free) {
        for (int d : set.digits) next.push_back(r * static_cast<std::uint64_t>(set.base) + static_cast<std::uint64_t>(d));
      } else {
        next.push_back(r * static_cast<std::uint64_t>(set.base));
      }
    }
    out.residues = std::move(next);
  }
  return out;
}

CoverageReport sumset_covers(const TruncatedSet& E, const TruncatedSet& F) {
  if (E.base != F.base || E.depth != F.depth) throw PreconditionError("sumset_covers: base or depth mismatch");
  const std::uint64_t N = power_u64(E.base, E.depth);
  std::vector<char> inE(static_cast<std::size_t>(N), 0);
  for (auto e : E.residues) inE[static_cast<std::size_t>(e)] = 1;
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((N + kChunk - 1) / kChunk);
  auto missing_chunks = parallel_map(chunks, [&](std::size_t c) {
    std::vector<std::uint64_t> miss;
    const std::uint64_t lo = c * kChunk, hi = std::min(N, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      bool hit = false;
      for (auto f : F.residues) {
        if (f > t) break;
        if (inE[static_cast<std::size_t>(t - f)]) {
          hit = true;
          break;
        }
      }
      if (!hit) miss.push_back(t);
    }
    return miss;
  });
  CoverageReport rep;
  rep.targets = N;
  for (auto& m : missing_chunks) rep.missing.insert(rep.missing.end(), m.begin(), m.end());
  rep.covered = rep.missing.empty();
  return rep;
}

std::vector<std::int64_t> schedule_from_h(const DimensionFunction& h, int K, std::int64_t m1, int base) {
  if (K < 1) throw PreconditionError("schedule_from_h: K must be >= 1");
  if (m1 < 1) throw PreconditionError("schedule_from_h: m1 must be >= 1");
  std::vector<std::int64_t> m{m1};
  const double lb = std::log(static_cast<double>(base));
  for (int k = 1; k < K; ++k) {
    const double log_y = -std::log(static_cast<double>(k)) - static_cast<double>(m.back()) * lb;
    const double L = inverse_log(h, log_y);
    const double next = std::ceil(L / lb);
    if (!std::isfinite(next) || next > 9e18)
      throw DomainError("schedule_from_h: m_" + std::to_string(k + 1) + " exceeds 64-bit range");
    m.push_back(static_cast<std::int64_t>(next));
  }
  return m;
}

std::vector<std::int64_t> concrete_schedule(int K, std::int64_t m1) {
  if (K < 1) throw PreconditionError("concrete_schedule: K must be >= 1");
  std::vector<std::int64_t> m{m1};
  for (int k = 1; k < K; ++k) {
    if (m.back() > 56) throw DomainError("concrete_schedule: m_" + std::to_string(k + 1) + " exceeds 64-bit range");
    const std::int64_t v = static_cast<std::int64_t>(k) << m.back();
    m.push_back(v);
  }
  return m;
}

double log_hcost_blockset(const DigitBlockSet& set, const DimensionFunction& h, int k) {
  if (k < 1 || k >= static_cast<int>(set.boundaries.size()))
    throw PreconditionError("hcost_blockset: needs m_{k+1}, i.e. 1 <= k < K");
  const std::int64_t depth = set.boundaries[static_cast<std::size_t>(k)];
  const std::int64_t ell = set.free_positions(depth);
  const double L = static_cast<double>(depth) * std::log(static_cast<double>(set.base));
  if (!h.in_domain(std::exp(-L)) && std::exp(-L) > 0)
    throw DomainError("hcost_blockset: base^-m_{k+1} outside the domain of " + h.str());
  return static_cast<double>(ell) * std::log(static_cast<double>(set.digits.size())) + h.log_eval_at(L);
}

double hcost_blockset(const DigitBlockSet& set, const DimensionFunction& h, int k) {
  return std::exp(log_hcost_blockset(set, h, k));
}

BoxCount box_count(const TruncatedSet& set, int m) {
  if (m < 0 || m > set.depth) throw PreconditionError("box_count: scale exponent beyond depth");
  const std::uint64_t div = power_u64(set.base, set.depth - m);
  BoxCount b;
  b.m = m;
  std::uint64_t last = std::numeric_limits<std::uint64_t>::max();
  for (auto r : set.residues) {
    const std::uint64_t pre = r / div;
    if (pre != last) {
      ++b.count;
      last = pre;
    }
  }
  b.slope = m == 0 ? 0.0 : std::log(static_cast<double>(b.count)) / (m * std::log(static_cast<double>(set.base)));
  return b;
}

DirectionReport direction_coverage(const TruncatedSet& E, const TruncatedSet& F, int grid) {
  if (grid < 2) throw PreconditionError("direction_coverage: grid must be >= 2");
  const auto cov = sumset_covers(E, F);
  if (!cov.covered) {
    std::string first;
    for (std::size_t i = 0; i < std::min<std::size_t>(5, cov.missing.size()); ++i)
      first += (i ? "," : "") + std::to_string(cov.missing[i]);
    throw PreconditionError("direction_coverage: E + F misses " + std::to_string(cov.missing.size()) +
                            " residues (first: " + first + ")");
  }
  const std::uint64_t N = power_u64(E.base, E.depth);
  const double scale = static_cast<double>(N);
  std::vector<char> inE(static_cast<std::size_t>(N), 0);
  for (auto e : E.residues) inE[static_cast<std::size_t>(e)] = 1;
  DirectionReport rep;
  rep.bound = std::atan(1.0 / scale);
  const double quarter = std::atan(1.0);
  rep.pairs = parallel_map(static_cast<std::size_t>(grid), [&](std::size_t i) {
    DirectionPair p;
    p.theta = quarter * static_cast<double>(i) / (grid - 1);
    const double c = std::tan(p.theta);
    const auto t = std::min<std::uint64_t>(N - 1, static_cast<std::uint64_t>(std::floor(c * scale)));
    for (auto f : F.residues) {
      if (f > t) break;
      if (inE[static_cast<std::size_t>(t - f)]) {
        p.x = static_cast<double>(t - f) / scale;
        p.y = static_cast<double>(f) / scale;
        break;
      }
    }
    p.angle_error = std::fabs(p.theta - std::atan(p.x + p.y));
    return p;
  });
  for (const auto& p : rep.pairs) rep.max_angle_error = std::max(rep.max_angle_error, p.angle_error);
  // Slack for the rounding of tan/atan near the bound.
  rep.pass = rep.max_angle_error <= rep.bound * (1 + 1e-9);
  return rep;
}

}  // namespace smallf

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smallf/dimfn.hpp"

namespace smallf {

/// Which blocks are forced to zero. Block k covers digit positions
/// m_k + 1 .. m_{k+1}, with m_0 = 0.
enum class Parity { ZeroOnEven, ZeroOnOdd };
Parity parse_parity(const std::string& s);
std::string to_string(Parity p);

/// Points of [0,1] whose base-b digits vanish on the zero blocks and use
/// `digits` elsewhere. With no boundaries every position is free.
struct DigitBlockSet {
  int base = 2;
  std::vector<std::int64_t> boundaries;  // m_1 < m_2 < ...
  Parity parity = Parity::ZeroOnEven;
  std::vector<int> digits;  // ascending; empty means all of 0..base-1

  DigitBlockSet() = default;
  DigitBlockSet(int base, std::vector<std::int64_t> boundaries, Parity parity, std::vector<int> digits = {});
  /// Every position free with the given digits.
  static DigitBlockSet uniform(int base, std::vector<int> digits);

  const std::vector<int>& allowed() const { return digits; }
  /// Digit position j >= 1 is free (not forced to zero).
  bool is_free(std::int64_t j) const;
  std::int64_t free_positions(std::int64_t depth) const;
  /// Last boundary, or -1 when unbounded.
  std::int64_t max_depth() const { return boundaries.empty() ? -1 : boundaries.back(); }
};

/// m_k - m_{k-1} + ... + m_2 - m_1 (1-based k >= 2, pairs taken downward).
std::int64_t ell_alternating(const std::vector<std::int64_t>& boundaries, int k);

/// Depth-d cylinder prefixes present, as integers in [0, base^d).
struct TruncatedSet {
  int base = 2;
  int depth = 0;
  std::vector<std::uint64_t> residues;  // ascending
};

constexpr std::size_t kResidueBudget = std::size_t{1} << 26;

TruncatedSet truncate(const DigitBlockSet& set, int depth);

struct CoverageReport {
  bool covered = false;
  std::vector<std::uint64_t> missing;  // targets in [0, base^d) with no e + f = t
  std::uint64_t targets = 0;
};

/// Exact integer sums e + f over the two residue sets.
CoverageReport sumset_covers(const TruncatedSet& E, const TruncatedSet& F);

/// m_{k+1} = ceil(log_base(1/x)) with h(x) = 1/(k base^(m_k)).
std::vector<std::int64_t> schedule_from_h(const DimensionFunction& h, int K, std::int64_t m1, int base = 2);
/// m_{k+1} = k 2^(m_k).
std::vector<std::int64_t> concrete_schedule(int K, std::int64_t m1);

/// (#digits)^l h(base^-m_{k+1}) with l the free positions up to m_{k+1}.
double hcost_blockset(const DigitBlockSet& set, const DimensionFunction& h, int k);
/// ln of the same quantity.
double log_hcost_blockset(const DigitBlockSet& set, const DimensionFunction& h, int k);

struct BoxCount {
  int m = 0;
  std::uint64_t count = 0;
  double slope = 0;  // ln N/(m ln base)
};

BoxCount box_count(const TruncatedSet& set, int m);

struct DirectionPair {
  double theta = 0;
  double x = 0;  // point (x, 1), x in E
  double y = 0;  // point (-y, 0), y in F
  double angle_error = 0;
};

struct DirectionReport {
  std::vector<DirectionPair> pairs;
  double max_angle_error = 0;
  double bound = 0;  // atan(base^-d)
  bool pass = false;
};

/// For theta_i = (pi/4) i/(grid-1), matches tan(theta) to x + y at depth d.
/// Throws PreconditionError naming the missing residues when E + F does not cover.
DirectionReport direction_coverage(const TruncatedSet& E, const TruncatedSet& F, int grid);

}  // namespace smallf

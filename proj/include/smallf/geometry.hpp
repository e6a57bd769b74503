#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallf/surd.hpp"

namespace smallf {

/// The n^2 values (sqrt2*k - j)/n, 0 <= j, k < n, sorted exactly.
std::vector<QuadSurd> discrepancy_values(int n);

struct CoveringRadius {
  int n = 0;
  QuadSurd rho;        // exact
  double rho_value = 0;
  QuadSurd witness;    // a point of [0,1] at distance exactly rho
  double bound = 0;    // ln(n)/n^2
  bool pass = false;   // rho <= bound
};

/// Largest distance from a point of [0,1] to the nearest value of
/// discrepancy_values(n). Points to the right of 1 count as neighbours of x
/// near 1. O(n^2) time, exact comparisons.
CoveringRadius covering_radius(int n);

/// Distance from x to the nearest value, by brute force over all n^2 values.
QuadSurd distance_to_values(int n, const QuadSurd& x);

struct DiscrepancyScan {
  int nmax = 0;
  std::vector<CoveringRadius> rows;   // n = 1..nmax
  int threshold = 0;                  // smallest n0 with pass for every n in [n0, nmax], 0 if none
  double max_ratio = 0;               // max over [n0, nmax] of rho n^2 / ln n
  int max_ratio_at = 0;
};

DiscrepancyScan scan_discrepancy(int nmax);

/// {(x, y): 0 <= x <= 1, |y - (m x + b)| <= delta}.
struct Tube {
  double m = 0;
  double b = 0;
  double delta = 0;
};

struct TubeFamily {
  std::vector<Tube> tubes;
  double delta = 0;
  int n = 0;      // generating parameter, 0 when not from G_n
  int level = 0;

  std::string json() const;
};

/// n^2 tubes around l_jk(x) = (1-x) j/n + x sqrt2 k/n with half-width ln(n)/n^2.
TubeFamily build_Gn(int n);

struct SlopeWitness {
  double slope = 0;
  std::optional<std::size_t> tube;  // index into the family
  double intercept = 0;             // c with y = slope x + c inside the tube
};

struct GsetReport {
  bool all_covered = true;
  std::size_t failures = 0;
  std::vector<SlopeWitness> witnesses;
};

/// Slopes i/(grid-1), i < grid (a single slope 0 when grid == 1). The segment
/// y = m x + c lies in tube (m', b', d) iff |c - b'| <= d and
/// |m - m' + c - b'| <= d; a tube qualifies iff |m - m'| <= 2d, taking
/// c = b' - (m - m')/2.
GsetReport verify_gset(const TubeFamily& family, int grid);

/// (x, y) -> (x, m x + delta y + b).
struct AffineMap {
  double m = 0;
  double delta = 1;
  double b = 0;
};

TubeFamily apply_affine(const AffineMap& map, const TubeFamily& family);

}  // namespace smallf

#pragma once

#include <string>
#include <vector>

#include "smallf/tower.hpp"

namespace smallf {

/// lemma31: n_j = exp((1/2) n_{j-1}^(4j/r)), r > 1.
/// ex48:    n_k = exp(k n_{k-1}^(2/r)),      r > 0.
/// Indices start at 1; the seed n_0 is not part of the output.
enum class SequenceKind { Lemma31, Ex48 };

SequenceKind parse_sequence_kind(const std::string& name);
std::string to_string(SequenceKind kind);

struct SequenceTerm {
  int index = 0;
  TowerScalar value;
  TowerScalar log_value;  // ln n_k
  /// (A) n_k >= 3 g_r(2 n_{k-1}) with g_r(x) = exp(x^(2/r)).
  bool flag_a = false;
  /// (B) ln n_k <= g_r(n_{k-1}).
  bool flag_b = false;
  /// n_k >= n_{k-1}^(k-1), the growth condition of the Jarník-type set.
  bool growth = false;
};

std::vector<SequenceTerm> generate_sequence(SequenceKind kind, double r, double n0, int count);

/// P_j = n_j^(2/r) for j = 0..count along the ex48 sequence, so that
/// ln n_j = j P_{j-1} and ln P_j = (2/r) j P_{j-1}.
std::vector<TowerScalar> ex48_powers(double r, double n0, int count);

/// c + sum_j c_j P_j over the ex48 powers. Terms of equal j combine on the
/// coefficients, which is where level-index arithmetic would lose the
/// cancellation; distinct P_j are far enough apart to add as towers.
class Ex48Form {
 public:
  Ex48Form() = default;
  static Ex48Form constant(long double c);
  static Ex48Form power(int j, long double c);

  Ex48Form& operator+=(const Ex48Form& o);
  friend Ex48Form operator+(Ex48Form a, const Ex48Form& b) { return a += b; }
  friend Ex48Form operator-(Ex48Form a, const Ex48Form& b) { return a += -1.0L * b; }
  friend Ex48Form operator*(long double c, Ex48Form f);

  /// Highest j with a nonzero coefficient, or -1 for a constant.
  int lead() const;
  long double coefficient(int j) const;
  long double constant_term() const { return c_; }
  SignedTower eval(const std::vector<TowerScalar>& P) const;

 private:
  long double c_ = 0;
  std::vector<long double> coef_;  // coef_[j] multiplies P_j
};

}  // namespace smallf

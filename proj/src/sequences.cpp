#include "smallf/sequences.hpp"

#include <cmath>

#include "smallf/rational.hpp"

namespace smallf {

SequenceKind parse_sequence_kind(const std::string& name) {
  if (name == "lemma31") return SequenceKind::Lemma31;
  if (name == "ex48") return SequenceKind::Ex48;
  throw PreconditionError("unknown sequence kind '" + name + "' (expected lemma31 or ex48)");
}

std::string to_string(SequenceKind kind) {
  return kind == SequenceKind::Lemma31 ? "lemma31" : "ex48";
}

std::vector<SequenceTerm> generate_sequence(SequenceKind kind, double r, double n0, int count) {
  if (kind == SequenceKind::Lemma31 && !(r > 1)) throw PreconditionError("lemma31 requires r > 1");
  if (kind == SequenceKind::Ex48 && !(r > 0)) throw PreconditionError("ex48 requires r > 0");
  if (!(n0 >= 3)) throw PreconditionError("sequence seed n0 must be >= 3");
  if (count < 0) throw PreconditionError("sequence length must be >= 0");

  const long double two_over_r = 2.0L / r;
  const long double ln3 = std::log(3.0L);
  const long double two_pow = std::pow(2.0L, two_over_r);

  std::vector<SequenceTerm> out;
  TowerScalar prev = TowerScalar::from_real(n0);
  for (int k = 1; k <= count; ++k) {
    SequenceTerm t;
    t.index = k;
    const TowerScalar p = tower_pow(prev, two_over_r);  // n_{k-1}^(2/r)
    if (kind == SequenceKind::Lemma31) {
      t.log_value = tower_scale(tower_pow(prev, 4.0L * k / r), 0.5L);
    } else {
      t.log_value = tower_scale(p, k);
    }
    t.value = tower_exp(t.log_value);

    if (kind == SequenceKind::Ex48) {
      // ln n_k - ln 3 - 2^(2/r) n_{k-1}^(2/r) = (k - 2^(2/r)) p - ln 3, decided without cancellation.
      const long double coef = k - two_pow;
      t.flag_a = coef > 0 && !(tower_scale(p, coef) < TowerScalar::from_real(ln3));
    } else {
      const SignedTower lhs(1, t.log_value);
      const SignedTower rhs = SignedTower::from_real(ln3) + two_pow * SignedTower(1, p);
      t.flag_a = !(lhs < rhs);
    }
    t.flag_b = !(p < SignedTower::log_of(t.log_value).magnitude()) ||
               SignedTower::log_of(t.log_value).sign() <= 0;
    if (k == 1) {
      t.growth = true;
    } else {
      const SignedTower need = static_cast<long double>(k - 1) * SignedTower::log_of(prev);
      t.growth = !(SignedTower(1, t.log_value) < need);
    }
    prev = t.value;
    out.push_back(t);
  }
  return out;
}

std::vector<TowerScalar> ex48_powers(double r, double n0, int count) {
  if (!(r > 0)) throw PreconditionError("ex48 requires r > 0");
  if (!(n0 >= 3)) throw PreconditionError("sequence seed n0 must be >= 3");
  std::vector<TowerScalar> P{tower_pow(TowerScalar::from_real(n0), 2.0L / r)};
  for (int j = 1; j <= count; ++j) P.push_back(tower_exp(tower_scale(P.back(), 2.0L * j / r)));
  return P;
}

Ex48Form Ex48Form::constant(long double c) {
  Ex48Form f;
  f.c_ = c;
  return f;
}

Ex48Form Ex48Form::power(int j, long double c) {
  if (j < 0) throw PreconditionError("Ex48Form: negative index");
  Ex48Form f;
  f.coef_.assign(static_cast<std::size_t>(j) + 1, 0);
  f.coef_[static_cast<std::size_t>(j)] = c;
  return f;
}

Ex48Form& Ex48Form::operator+=(const Ex48Form& o) {
  c_ += o.c_;
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0);
  for (std::size_t j = 0; j < o.coef_.size(); ++j) coef_[j] += o.coef_[j];
  return *this;
}

Ex48Form operator*(long double c, Ex48Form f) {
  f.c_ *= c;
  for (auto& x : f.coef_) x *= c;
  return f;
}

int Ex48Form::lead() const {
  for (std::size_t j = coef_.size(); j-- > 0;)
    if (coef_[j] != 0) return static_cast<int>(j);
  return -1;
}

long double Ex48Form::coefficient(int j) const {
  return j >= 0 && static_cast<std::size_t>(j) < coef_.size() ? coef_[static_cast<std::size_t>(j)] : 0;
}

SignedTower Ex48Form::eval(const std::vector<TowerScalar>& P) const {
  if (coef_.size() > P.size()) throw PreconditionError("Ex48Form: not enough powers");
  SignedTower out = SignedTower::from_real(c_);
  for (std::size_t j = 0; j < coef_.size(); ++j) {
    if (coef_[j] == 0) continue;
    out = out + SignedTower(coef_[j] > 0 ? 1 : -1, tower_scale(P[j], std::fabs(coef_[j])));
  }
  return out;
}

}  // namespace smallf

#include "smallf/dimfn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "smallf/format.hpp"
#include "smallf/rational.hpp"

namespace smallf {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

double parse_number(const std::string& s, std::string_view whole) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw PreconditionError("cannot parse dimension function '" + std::string(whole) + "'");
  return v;
}

}  // namespace

DimensionFunction::DimensionFunction(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("dimension function exponents must be finite");
  if (a < 0) throw DomainError("dimension function needs a >= 0");
  if (a == 0 && b <= 0) throw DomainError("dimension function with a = 0 needs b > 0 to vanish at 0");
}

DimensionFunction DimensionFunction::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw PreconditionError("empty dimension function");
  if (s.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
      return DimensionFunction(j.at("a").get<double>(), j.at("b").get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("bad dimension function JSON: ") + e.what());
    }
  }
  double a = 0, b = 0;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('*', pos);
    if (next == std::string::npos) next = s.size();
    const std::string term = s.substr(pos, next - pos);
    if (term == "x") {
      a += 1;
    } else if (term.rfind("x^", 0) == 0) {
      a += parse_number(term.substr(2), text);
    } else if (term == "1/log") {
      b += 1;
    } else if (term == "log") {
      b -= 1;
    } else if (term.rfind("log^", 0) == 0) {
      b -= parse_number(term.substr(4), text);
    } else {
      throw PreconditionError("cannot parse dimension function '" + std::string(text) + "'");
    }
    pos = next + 1;
  }
  return DimensionFunction(a, b);
}

double DimensionFunction::domain_max() const {
  if (a_ == 0) return std::exp(-1.0);
  if (b_ == 0) return std::numeric_limits<double>::infinity();
  return std::exp(-std::max(1.0, std::fabs(b_) / a_));
}

double DimensionFunction::eval(double x) const {
  if (!in_domain(x))
    throw DomainError("eval: x = " + fmt_double(x) + " outside (0, " + fmt_double(domain_max()) +
                      "] for " + str());
  if (b_ == 0) return std::pow(x, a_);
  const double L = -std::log(x);
  return std::exp(log_eval_at(L));
}

double DimensionFunction::log_eval_at(double L) const {
  if (b_ == 0) return -a_ * L;
  if (!(L > 0)) throw DomainError("log_eval_at: L must be positive when b != 0");
  return -a_ * L - b_ * std::log(L);
}

bool DimensionFunction::is_concave_on(double xmax) const {
  auto bracket = [&](double L) {
    const double u = a_ + b_ / L;
    return u * (u - 1) + b_ / (L * L);
  };
  if (b_ == 0) return a_ <= 1;
  const double lmin = std::max(-std::log(std::min(xmax, domain_max())), 1e-300);
  // Sample geometrically; the bracket is a rational function of 1/L with at
  // most two sign changes, so a dense log-grid plus the L -> inf limit suffices.
  for (int i = 0; i <= 4000; ++i) {
    const double L = lmin * std::pow(10.0, i * 0.005);
    if (bracket(L) > 1e-15) return false;
  }
  // Limit L -> inf: a(a-1) < 0, or for a in {0, 1} the leading 1/L term.
  if (a_ == 1) return b_ <= 0 && bracket(1e300) <= 0;
  if (a_ == 0) return b_ > 0;
  return a_ < 1;
}

std::string DimensionFunction::str() const {
  std::string out;
  if (a_ != 0) out = a_ == 1 ? "x" : "x^" + fmt_double(a_);
  if (b_ != 0) {
    if (!out.empty()) out += "*";
    out += "log^" + fmt_double(-b_);
  }
  return out;
}

std::string DimensionFunction::json() const {
  return "{\"a\":" + fmt_double(a_) + ",\"b\":" + fmt_double(b_) + "}";
}

std::string to_string(OrderRelation r) {
  switch (r) {
    case OrderRelation::Less: return "Less";
    case OrderRelation::Greater: return "Greater";
    case OrderRelation::Equivalent: return "Equivalent";
  }
  return "?";
}

OrderRelation compare(const DimensionFunction& g, const DimensionFunction& h) {
  if (g.a() != h.a()) return g.a() < h.a() ? OrderRelation::Less : OrderRelation::Greater;
  if (g.b() != h.b()) return g.b() < h.b() ? OrderRelation::Less : OrderRelation::Greater;
  return OrderRelation::Equivalent;
}

DimensionFunction gap(const DimensionFunction& g, const DimensionFunction& h) {
  if (compare(g, h) != OrderRelation::Less)
    throw PreconditionError("gap undefined: " + g.str() + " is not dimensionally smaller than " + h.str());
  return DimensionFunction(h.a() - g.a(), h.b() - g.b());
}

double inverse_log(const DimensionFunction& h, double log_y) {
  if (!std::isfinite(log_y)) throw DomainError("inverse: y must be positive and finite");
  const double target = -log_y;  // a L + b ln L = target
  if (h.b() == 0) {
    const double L = target / h.a();
    if (!std::isfinite(L)) throw DomainError("inverse: y outside range");
    return L;
  }
  auto g = [&](double L) { return h.a() * L + h.b() * std::log(L); };
  const double lmin = -std::log(h.domain_max());
  if (target < g(lmin)) throw DomainError("inverse: y outside range of " + h.str());
  double lo = lmin, hi = 2 * lmin;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2;
    if (!std::isfinite(hi)) throw DomainError("inverse: no solution in double range");
  }
  for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double inverse(const DimensionFunction& h, double y) {
  if (!(y > 0)) throw DomainError("inverse: y must be positive");
  const double L = inverse_log(h, std::log(y));
  const double x = std::exp(-L);
  if (!(x > 0)) throw DomainError("inverse: solution underflows a double; use inverse_log");
  return x;
}

double hausdorff_cost(std::uint64_t count, double delta, const DimensionFunction& h) {
  return static_cast<double>(count) * h.eval(delta);
}

}  // namespace smallf

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "smallf/acceptance.hpp"
#include "smallf/cantor.hpp"
#include "smallf/dimfn.hpp"
#include "smallf/format.hpp"
#include "smallf/furstenberg.hpp"
#include "smallf/geometry.hpp"
#include "smallf/jarnik.hpp"
#include "smallf/sequences.hpp"
#include "smallf/sumset.hpp"
#include "smallf/surd.hpp"

namespace smallf::cli {

namespace {

constexpr auto kExact = Provenance::Exact;
constexpr auto kFloat = Provenance::Float;

std::string num(double v) { return fmt_double(v); }
std::string num(long double v) { return fmt_double(static_cast<double>(v)); }
std::string flag(bool b) { return b ? "true" : "false"; }

/// Attaches a leaf: when CLI11 selects it, `make` runs after parsing.
template <class Opts>
CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& desc, Handler& selected,
               std::string& selected_name, std::shared_ptr<Opts> opts,
               std::function<CommandOutput(const Opts&)> run) {
  CLI::App* sub = parent->add_subcommand(name, desc);
  std::string dotted = parent->get_parent() ? parent->get_name() + "." + name : name;
  sub->callback([&selected, &selected_name, opts, run, dotted] {
    selected = [opts, run] { return run(*opts); };
    selected_name = dotted;
  });
  return sub;
}

std::optional<LiminfClass> parse_liminf(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "positive") return LiminfClass::Positive;
  if (s == "zero") return LiminfClass::Zero;
  throw CLI::ValidationError("--expect", "must be positive or zero");
}

void expect_liminf(CommandOutput& out, const std::string& expect, LiminfClass got) {
  if (auto want = parse_liminf(expect))
    out.checks.push_back({"liminf is " + to_string(*want), got == *want, "classified " + to_string(got)});
}

// ---- dimfn ---------------------------------------------------------------

struct DimfnOpts {
  std::string h, g, expect;
  int points = 13;
  double decades = 12;
  double xmax = 0;
};

CommandOutput run_dimfn(const DimfnOpts& o) {
  const auto h = DimensionFunction::parse(o.h);
  std::optional<DimensionFunction> g;
  if (!o.g.empty()) g = DimensionFunction::parse(o.g);
  const double top = o.xmax > 0 ? o.xmax : std::min(0.5, h.domain_max());
  std::vector<Column> cols{{"x", "length", kFloat}, {"h", "value", kFloat}, {"ln_h", "nats", kFloat},
                           {"in_domain", "bool", kExact}};
  if (g) {
    cols.push_back({"g", "value", kFloat});
    cols.push_back({"ln_h_over_g", "nats", kFloat});
  }
  CommandOutput out;
  out.table.emplace(cols);
  for (int i = 0; i < o.points; ++i) {
    const double L = -std::log(top) + o.decades * std::log(10.0) * i / std::max(1, o.points - 1);
    const double x = std::exp(-L);
    std::vector<std::string> row{num(x), num(h.eval(x)), num(h.log_eval_at(L)), flag(h.in_domain(x))};
    if (g) {
      row.push_back(num(g->eval(x)));
      row.push_back(num(h.log_eval_at(L) - g->log_eval_at(L)));
    }
    out.table->add_row(std::move(row));
  }
  out.measured = {{"h", h.str()}, {"domain_max", h.domain_max()}, {"concave", h.is_concave()}};
  if (g) {
    const auto rel = compare(*g, h);
    out.measured["relation_g_h"] = to_string(rel);
    if (rel == OrderRelation::Less) out.measured["gap"] = gap(*g, h).str();
    if (!o.expect.empty())
      out.checks.push_back({"g " + o.expect + " h", to_string(rel) == o.expect, "relation " + to_string(rel)});
  }
  return out;
}

// ---- discrepancy ---------------------------------------------------------

struct DiscrepancyOpts {
  int nmax = 200;
  int n0 = 100;
};

CommandOutput run_discrepancy(const DiscrepancyOpts& o) {
  const auto scan = scan_discrepancy(o.nmax);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"n", "count", kExact},
                                        {"rho", "length", kExact},
                                        {"rho_value", "length", kFloat},
                                        {"bound", "length", kFloat},
                                        {"pass", "bool", kExact}});
  int bad = 0;
  for (const auto& r : scan.rows) {
    out.table->add_row({std::to_string(r.n), r.rho.str(), num(r.rho_value), num(r.bound), flag(r.pass)});
    if (r.n >= o.n0 && !r.pass) ++bad;
  }
  out.checks.push_back({"rho(n) <= ln(n)/n^2 for n in [" + std::to_string(o.n0) + ", " + std::to_string(o.nmax) + "]",
                        bad == 0, std::to_string(bad) + " violations"});
  out.measured = {{"n0", scan.threshold}, {"max_ratio", scan.max_ratio}, {"max_ratio_at", scan.max_ratio_at}};
  return out;
}

// ---- gset ----------------------------------------------------------------

struct GsetOpts {
  int n = 0, nmin = 0, nmax = 0;
  int grid = 10000;
  bool tubes = false;
};

CommandOutput run_gset(const GsetOpts& o) {
  int lo = o.n, hi = o.n;
  if (o.n == 0) {
    if (o.nmin < 1 || o.nmax < o.nmin) throw CLI::ValidationError("gset", "give --n, or --nmin <= --nmax");
    lo = o.nmin;
    hi = o.nmax;
  }
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"n", "count", kExact},
                                        {"tubes", "count", kExact},
                                        {"delta", "length", kFloat},
                                        {"slopes", "count", kExact},
                                        {"failures", "count", kExact},
                                        {"pass", "bool", kExact}});
  std::size_t failing = 0;
  for (int n = lo; n <= hi; ++n) {
    const auto fam = build_Gn(n);
    const auto rep = verify_gset(fam, o.grid);
    if (!rep.all_covered) ++failing;
    out.table->add_row({std::to_string(n), std::to_string(fam.tubes.size()), num(fam.delta), std::to_string(o.grid),
                        std::to_string(rep.failures), flag(rep.all_covered)});
    if (o.tubes && lo == hi) out.extra["tubes"] = Json::parse(fam.json());
  }
  out.checks.push_back({"every slope on the grid lies in a tube", failing == 0,
                        std::to_string(failing) + " failing n"});
  return out;
}

// ---- towers --------------------------------------------------------------

struct TowersOpts {
  std::string kind = "ex48";
  double r = 2;
  double n0 = 10;
  int levels = 6;
};

CommandOutput run_towers(const TowersOpts& o) {
  const auto terms = generate_sequence(parse_sequence_kind(o.kind), o.r, o.n0, o.levels);
  CommandOutput out;
  out.default_format = "json";
  out.table.emplace(std::vector<Column>{{"k", "index", kExact},
                                        {"n_k", "level-index", kFloat},
                                        {"ln_n_k", "level-index", kFloat},
                                        {"flag_a", "bool", kExact},
                                        {"flag_b", "bool", kExact},
                                        {"growth", "bool", kExact}});
  for (const auto& t : terms)
    out.table->add_row({std::to_string(t.index), t.value.str(), t.log_value.str(), flag(t.flag_a), flag(t.flag_b),
                        flag(t.growth)});
  out.measured = {{"kind", o.kind}, {"r", o.r}, {"n0", o.n0}};
  return out;
}

// ---- furstenberg ---------------------------------------------------------

struct FurstOpts {
  std::string mode = "alpha";
  std::string alpha = "1/2";
  double r = 2;
  std::int64_t n = 16;
  std::vector<std::int64_t> ns{8, 16, 32, 64, 128};
  std::string t;
  std::string h;
  std::size_t audit = 1000;
  double C = 8;
  int levels = 4;
  std::vector<int> desk;
  std::uint64_t M0 = 1;
  double delta0 = 1;
  double n0 = 10;
  double theta = 0;
  std::string expect;
  const GlobalOptions* g = nullptr;

  ConstructionParams params() const {
    ConstructionParams p;
    if (mode == "alpha") {
      p.mode = DenominatorMode::Alpha;
    } else if (mode == "logpow") {
      p.mode = DenominatorMode::LogPow;
    } else {
      throw CLI::ValidationError("--mode", "must be alpha or logpow");
    }
    p.alpha = Rational::parse(alpha);
    p.r = r;
    p.M0 = M0;
    p.delta0 = delta0;
    p.levels = levels;
    p.desk_sequence = desk;
    p.n0 = n0;
    return p;
  }
};

void add_construction_flags(CLI::App* sub, FurstOpts& o) {
  sub->add_option("--mode", o.mode, "alpha (q <= n^alpha) or logpow (q <= ln(n^2)^(r/2))")->capture_default_str();
  sub->add_option("--alpha", o.alpha, "exponent alpha as p/q")->capture_default_str();
  sub->add_option("--r", o.r, "logpow exponent r")->capture_default_str();
}

CommandOutput run_st(const FurstOpts& o) {
  const auto p = o.params();
  if (o.t.empty()) throw CLI::ValidationError("--t", "required: a point u = p/q of Gamma_n");
  const auto res = compute_St(o.n, Rational::parse(o.t), p, true);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"v", "value/(n q)", kExact}});
  for (const auto& v : res.values) out.table->add_row({v.str()});
  const double bound = 2 * std::pow(static_cast<double>(o.n), 1 + p.alpha_value());
  out.checks.push_back({"|S(t)| <= 2 n^(1+alpha)", static_cast<double>(res.count) <= bound,
                        std::to_string(res.count) + " vs " + num(bound)});
  out.measured = {{"count", res.count}, {"bound", bound}};
  return out;
}

CommandOutput run_union(const FurstOpts& o) {
  const auto p = o.params();
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"n", "count", kExact},
                                        {"gamma_size", "count", kExact},
                                        {"union", "points", kExact},
                                        {"ratio", "union/n^(1+3alpha)", kFloat}});
  double C = 0;
  for (auto n : o.ns) {
    const auto total = union_St_count(n, p);
    const double ratio = static_cast<double>(total) / std::pow(static_cast<double>(n), 1 + 3 * p.alpha_value());
    C = std::max(C, ratio);
    out.table->add_row({std::to_string(n), std::to_string(build_Gamma(n, p).size()), std::to_string(total), num(ratio)});
  }
  out.checks.push_back({"union ratio <= " + num(o.C), C <= o.C, "max " + num(C)});
  out.measured = {{"C", C}};
  return out;
}

CommandOutput run_cover(const FurstOpts& o) {
  const auto p = o.params();
  const double a = (1 + 3 * p.alpha_value()) / 2;
  const auto h = o.h.empty() ? DimensionFunction(a, -o.theta) : DimensionFunction::parse(o.h);
  const auto rep = cover_Lambda(o.n, p, h, o.audit, o.g->seed);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"n", "count", kExact},
                                        {"rectangles", "count", kExact},
                                        {"half_width", "length", kFloat},
                                        {"half_height", "length", kFloat},
                                        {"diameter", "length", kFloat},
                                        {"diameter_constant", "diameter n^2/ln n", kFloat},
                                        {"ln_cost", "nats", kFloat},
                                        {"audit_samples", "count", kExact},
                                        {"audit_failures", "count", kExact}});
  out.table->add_row({std::to_string(rep.n), std::to_string(rep.count), num(rep.half_width), num(rep.half_height),
                      num(rep.diameter), num(rep.diameter_constant), num(rep.log_cost),
                      std::to_string(rep.audit_samples), std::to_string(rep.audit_failures)});
  out.checks.push_back({"sampled tube points are covered", rep.audit_failures == 0,
                        std::to_string(rep.audit_failures) + "/" + std::to_string(rep.audit_samples) + " uncovered"});
  out.measured = {{"h", h.str()}, {"diameter_constant", rep.diameter_constant}};
  return out;
}

CommandOutput run_iterate(const FurstOpts& o) {
  const auto p = o.params();
  const auto states = iterate_construction(p);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"j", "level", kExact},
                                        {"n_j", "level-index", kFloat},
                                        {"tubes", "level-index", kFloat},
                                        {"inv_delta", "level-index", kFloat},
                                        {"cover_count", "level-index", kFloat},
                                        {"next_admissible", "bool", kExact},
                                        {"next_growth", "bool", kExact}});
  bool adm = true, growth = true;
  for (const auto& s : states) {
    adm = adm && s.next_admissible;
    growth = growth && s.next_growth;
    out.table->add_row({std::to_string(s.level), s.level == 0 ? "" : s.n.str(), s.M.str(), s.inv_delta.str(),
                        s.cover_count.str(), flag(s.next_admissible), flag(s.next_growth)});
  }
  out.checks.push_back({"each n_{j+1} is admissible", adm, ""});
  out.checks.push_back({"n_{j+1} > n_j^j", growth, ""});
  return out;
}

CommandOutput run_hcost(const FurstOpts& o) {
  const auto p = o.params();
  const auto seq = hcost_sequence(p, o.theta, o.levels);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"j", "level", kExact}, {"ln_cost", "nats, level-index", kFloat}});
  for (const auto& t : seq.terms) out.table->add_row({std::to_string(t.j), t.log_cost.str()});
  out.measured = {{"critical", seq.critical}, {"trend", to_string(seq.trend)}, {"boundary", seq.boundary}};
  if (!o.expect.empty())
    out.checks.push_back({"cost " + o.expect, to_string(seq.trend) == o.expect, "trend " + to_string(seq.trend)});
  return out;
}

CommandOutput run_boxdim(const FurstOpts& o) {
  auto p = o.params();
  p.mode = DenominatorMode::LogPow;
  const auto terms = boxdim_ratio_sequence(p.r, default_tower_sequence(p, o.levels));
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"j", "level", kExact},
                                        {"ln_n_j", "level-index", kFloat},
                                        {"ratio", "dimensionless", kFloat},
                                        {"ln_excess", "ln(ratio - 1/2)", kFloat}});
  bool mono = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && !(terms[i].log_excess < terms[i - 1].log_excess)) mono = false;
    out.table->add_row({std::to_string(terms[i].j), terms[i].log_n.str(), num(terms[i].ratio),
                        terms[i].log_excess.str()});
  }
  out.checks.push_back({"ratio_j strictly decreasing", mono, ""});
  return out;
}

// ---- cantor --------------------------------------------------------------

struct CantorOpts {
  std::string schedule;
  int middle_thirds = 0;
  std::string h = "x^0.6309297535714574";
  std::size_t samples = 10000;
  double r = 2;
  double n0 = 10;
  int levels = 10;
  std::string expect;
  const GlobalOptions* g = nullptr;

  CantorSchedule load() const {
    if (!schedule.empty() && middle_thirds > 0)
      throw CLI::ValidationError("cantor", "--schedule and --middle-thirds are exclusive");
    if (middle_thirds > 0) return CantorSchedule::middle_thirds(middle_thirds);
    if (schedule.empty()) throw CLI::ValidationError("cantor", "give --schedule FILE or --middle-thirds K");
    std::ifstream f(schedule);
    if (!f) throw CLI::ValidationError("--schedule", "cannot read " + schedule);
    std::stringstream ss;
    ss << f.rdbuf();
    return CantorSchedule::from_json(ss.str());
  }
};

void add_schedule_flags(CLI::App* sub, CantorOpts& o) {
  sub->add_option("--schedule", o.schedule, "JSON file {\"m\": [...], \"eps\": [...]}");
  sub->add_option("--middle-thirds", o.middle_thirds, "use m_k = 2, eps_k = 3^-k for k <= K");
  sub->add_option("--h", o.h, "dimension function, e.g. x^0.5 or log^-2")->capture_default_str();
}

CommandOutput run_dk(const CantorOpts& o) {
  const auto s = o.load();
  const auto h = DimensionFunction::parse(o.h);
  const auto dk = dk_sequence(s, h);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "level", kExact},
                                        {"m_k", "count", kExact},
                                        {"eps_k", "length", kExact},
                                        {"ln_D_k", "nats", kFloat}});
  for (int k = 0; k < s.levels(); ++k)
    out.table->add_row({std::to_string(k + 1), std::to_string(s.m[static_cast<std::size_t>(k)]),
                        s.eps[static_cast<std::size_t>(k)].str(), num(dk.log_d[static_cast<std::size_t>(k)])});
  out.measured = {{"liminf", to_string(dk.liminf)}};
  if (s.levels() >= 2) out.measured["classical_dim_estimate"] = classical_dim_estimate(s);
  expect_liminf(out, o.expect, dk.liminf);
  return out;
}

CommandOutput run_mdp(const CantorOpts& o) {
  const auto s = o.load();
  const auto h = DimensionFunction::parse(o.h);
  const auto gen = middle_thirds_generator();
  if (o.middle_thirds == 0)
    throw CLI::ValidationError("cantor mdp", "needs --middle-thirds K (explicit children are only built for it)");
  const auto mass = MassDistribution::from_family(build_nested(s, gen), s);
  const auto rep = verify_mdp(mass, h, o.samples, o.g->seed);
  const auto samples = sample_intervals(mass, h, o.samples, o.g->seed);
  std::size_t violations = 0;
  for (const auto& u : samples) {
    const auto b = mass_bound(mass, u);
    if (b && *b < mass_of_interval(mass, u)) ++violations;
  }
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "level", kExact}, {"ratio", "mu(I_k)/h(|I_k|)", kFloat}});
  for (std::size_t k = 0; k < rep.level_ratios.size(); ++k)
    out.table->add_row({std::to_string(k + 1), num(rep.level_ratios[k])});
  out.checks.push_back({"mu(U) <= min{m_k, 2|U|/eps_k}/(m_1...m_k)", violations == 0,
                        std::to_string(violations) + "/" + std::to_string(samples.size()) + " violations"});
  out.checks.push_back({"mu(U)/h(|U|) bounded along the construction", !rep.unbounded,
                        "max sampled ratio " + num(rep.max_ratio)});
  out.measured = {{"max_ratio", rep.max_ratio},
                  {"witness", {rep.witness.lo.str(), rep.witness.hi.str()}},
                  {"doubling_constant", rep.doubling_constant}};
  return out;
}

CommandOutput run_cantor_ex48(const CantorOpts& o) {
  const auto h = DimensionFunction::parse(o.h);
  const auto d = ex48_dk_sequence(o.r, o.n0, h, o.levels);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "level", kExact},
                                        {"ln_m_k", "nats, level-index", kFloat},
                                        {"ln_D_k", "nats, level-index", kFloat},
                                        {"clamped", "bool", kExact}});
  for (std::size_t i = 0; i < d.log_d.size(); ++i)
    out.table->add_row({std::to_string(i + 1), d.log_m[i].str(), d.log_d[i].str(), flag(d.clamped[i])});
  out.measured = {{"liminf", to_string(d.liminf)}};
  expect_liminf(out, o.expect, d.liminf);
  return out;
}

// ---- jarnik --------------------------------------------------------------

struct JarnikOpts {
  std::string g = "x^3";
  std::vector<std::int64_t> n{20, 192000};
  std::size_t inclusion = 0;
  std::string x;
  std::int64_t qmax = 0;
  std::int64_t level_n = 0;
  std::string f = "x";
  double r = 2;
  double theta = 1;
  double n0 = 10;
  int levels = 10;
  std::string expect;
  const GlobalOptions* gl = nullptr;
};

CommandOutput run_jarnik_build(const JarnikOpts& o) {
  const auto g = ApproxFunction::parse(o.g);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "level", kExact},
                                        {"n_k", "count", kExact},
                                        {"eps_k", "length", kExact},
                                        {"promised", "children", kExact},
                                        {"min_children", "children", kExact},
                                        {"max_children", "children", kExact},
                                        {"parents", "count", kExact},
                                        {"intervals", "count", kExact},
                                        {"flag_a", "bool", kExact},
                                        {"flag_b", "bool", kExact}});
  JarnikLevels L;
  try {
    L = build_levels(g, o.n, static_cast<int>(o.n.size()));
  } catch (const CantorHypothesisError& e) {
    out.checks.push_back({"every parent has the promised children", false, e.what()});
    return out;
  }
  for (int k = 1; k <= L.depth(); ++k) {
    const auto& lv = L.levels[static_cast<std::size_t>(k)];
    out.table->add_row({std::to_string(k), std::to_string(lv.n), lv.eps.str(), std::to_string(lv.promised),
                        std::to_string(lv.min_children), std::to_string(lv.max_children), std::to_string(lv.parents),
                        std::to_string(lv.interval_count), flag(lv.flag_a), flag(lv.flag_b)});
  }
  out.checks.push_back({"every parent has the promised children", true, ""});
  if (o.inclusion > 0) {
    const auto inc = verify_inclusion(L, o.inclusion, o.gl->seed);
    out.checks.push_back({"sampled points have a witness at every level", inc.failures == 0,
                          std::to_string(inc.failures) + " failures over " + std::to_string(inc.samples)});
    out.checks.push_back({"witnesses satisfy the norm bound", inc.norm_failures == 0,
                          std::to_string(inc.norm_failures) + " failures"});
  }
  if (L.depth() >= 2) out.measured["classical_dim_estimate"] = classical_dim_estimate(L.schedule(true));
  out.measured["g"] = g.str();
  return out;
}

/// "x" or "x^s".
std::function<double(double)> parse_power(const std::string& text) {
  if (text == "x") return [](double v) { return v; };
  if (text.rfind("x^", 0) == 0) {
    const double s = std::stod(text.substr(2));
    return [s](double v) { return std::pow(v, s); };
  }
  throw CLI::ValidationError("--f", "expected x or x^s");
}

CommandOutput run_witness(const JarnikOpts& o) {
  if (o.x.empty()) throw CLI::ValidationError("--x", "required, e.g. \"sqrt(2)-1\"");
  const auto x = QuadSurd::parse(o.x);
  WitnessResult w;
  std::string tol;
  if (o.level_n > 0) {
    w = witness_search(x, parse_power(o.f), o.level_n);
    tol = Rational(BigInt(1), BigInt(static_cast<long>(o.level_n)) * BigInt(static_cast<long>(o.level_n))).str();
  } else {
    if (o.qmax < 1) throw CLI::ValidationError("jarnik witness", "give --qmax Q, or --n N with --f");
    w = witness_search(x, o.qmax, Rational(1));
    tol = "1";
  }
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"qmax", "count", kExact},
                                        {"p", "integer", kExact},
                                        {"q", "integer", kExact},
                                        {"error", "|x - p/q|", kExact},
                                        {"error_value", "|x - p/q|", kFloat},
                                        {"tolerance", "length", kExact},
                                        {"accepted", "bool", kExact}});
  if (w.witness)
    out.table->add_row({std::to_string(w.qmax), std::to_string(w.witness->p), std::to_string(w.witness->q),
                        w.witness->error.str(), num(w.witness->error.to_double()), tol, flag(w.accepted)});
  out.checks.push_back({"witness with error below tolerance", w.accepted,
                        w.rational_input ? "x is rational" : (w.witness ? "" : "no candidate")});
  return out;
}

CommandOutput run_separation(const JarnikOpts& o) {
  const auto g = ApproxFunction::parse(o.g);
  if (o.level_n < 1) throw CLI::ValidationError("--n", "required");
  const auto H = build_Hn(o.level_n, g);
  const auto rep = min_separation(H, g);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"n", "count", kExact},
                                        {"intervals", "count", kExact},
                                        {"min_gap", "length", kExact},
                                        {"gap_bound", "length", kExact},
                                        {"min_center", "length", kExact},
                                        {"center_bound", "length", kExact},
                                        {"pass", "bool", kExact}});
  out.table->add_row({std::to_string(o.level_n), std::to_string(H.set.size()),
                      rep.min_gap ? rep.min_gap->str() : "", rep.gap_bound.str(),
                      rep.min_center ? rep.min_center->str() : "", rep.center_bound.str(), flag(rep.pass)});
  out.checks.push_back({"gap >= 1/(8n^2) and center gap >= 1/(4n^2)", rep.pass, ""});
  return out;
}

CommandOutput run_critlow(const JarnikOpts& o) {
  const auto rep = critlow_ex48(o.r, DimensionFunction(0, o.theta), o.n0, o.levels);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "level", kExact},
                                        {"ln_value", "nats, level-index", kFloat},
                                        {"ln_chain", "nats, level-index", kFloat},
                                        {"resolved", "bool", kExact}});
  for (const auto& t : rep.terms)
    out.table->add_row({std::to_string(t.k), t.log_value.str(), t.log_chain.str(), flag(t.log_value.resolved())});
  out.measured = {{"liminf", to_string(rep.liminf)}, {"equivalent", rep.equivalent}};
  expect_liminf(out, o.expect, rep.liminf);
  return out;
}

// ---- sumset --------------------------------------------------------------

struct SumsetOpts {
  int base = 4;
  std::vector<int> e_digits{0, 1};
  std::vector<int> f_digits{0, 2};
  std::vector<std::int64_t> schedule;
  std::string e_parity = "even-blocks-zero";
  std::string f_parity = "odd-blocks-zero";
  int depth = 6;
  int grid = 65;
  std::string h = "log^-1";
  int levels = 4;
  std::int64_t m1 = 1;
  bool concrete = false;

  DigitBlockSet E() const { return make(e_digits, e_parity); }
  DigitBlockSet F() const { return make(f_digits, f_parity); }

 private:
  DigitBlockSet make(const std::vector<int>& digits, const std::string& parity) const {
    if (schedule.empty()) return DigitBlockSet::uniform(base, digits);
    return DigitBlockSet(base, schedule, parse_parity(parity), digits);
  }
};

void add_pair_flags(CLI::App* sub, SumsetOpts& o) {
  sub->add_option("--base", o.base, "digit base")->capture_default_str();
  sub->add_option("--e-digits", o.e_digits, "allowed digits of E")->delimiter(',')->capture_default_str();
  sub->add_option("--f-digits", o.f_digits, "allowed digits of F")->delimiter(',')->capture_default_str();
  sub->add_option("--schedule", o.schedule, "block boundaries m_1,m_2,...; blocks alternate between E and F")
      ->delimiter(',');
  sub->add_option("--e-parity", o.e_parity, "zero blocks of E")->capture_default_str();
  sub->add_option("--f-parity", o.f_parity, "zero blocks of F")->capture_default_str();
  sub->add_option("--depth", o.depth, "digit depth d")->capture_default_str();
}

CommandOutput run_sumset_check(const SumsetOpts& o) {
  const auto cov = sumset_covers(truncate(o.E(), o.depth), truncate(o.F(), o.depth));
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"missing", "residue mod base^d", kExact}});
  for (auto t : cov.missing) out.table->add_row({std::to_string(t)});
  out.checks.push_back({"E + F covers every residue", cov.covered,
                        std::to_string(cov.missing.size()) + "/" + std::to_string(cov.targets) + " missing"});
  out.measured = {{"targets", cov.targets}, {"missing", cov.missing.size()}};
  return out;
}

CommandOutput run_sumset_schedule(const SumsetOpts& o) {
  const auto h = DimensionFunction::parse(o.h);
  const auto m = o.concrete ? concrete_schedule(o.levels, o.m1) : schedule_from_h(h, o.levels, o.m1, o.base);
  const DigitBlockSet E(o.base, m, Parity::ZeroOnEven), F(o.base, m, Parity::ZeroOnOdd);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"k", "block", kExact},
                                        {"m_k", "digits", kExact},
                                        {"ln_hcost_E", "nats", kFloat},
                                        {"ln_hcost_F", "nats", kFloat}});
  for (int k = 1; k <= static_cast<int>(m.size()); ++k) {
    std::string ce, cf;
    if (k < static_cast<int>(m.size())) {
      ce = num(log_hcost_blockset(E, h, k));
      cf = num(log_hcost_blockset(F, h, k));
    }
    out.table->add_row({std::to_string(k), std::to_string(m[static_cast<std::size_t>(k - 1)]), ce, cf});
  }
  out.measured = {{"h", h.str()}, {"schedule", m}, {"rule", o.concrete ? "k 2^(m_k)" : "inverse of h"}};
  return out;
}

CommandOutput run_boxcount(const SumsetOpts& o) {
  const auto T = truncate(o.E(), o.depth);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"m", "digits", kExact},
                                        {"boxes", "count", kExact},
                                        {"slope", "ln N/(m ln base)", kFloat}});
  for (int m = 1; m <= o.depth; ++m) {
    const auto b = box_count(T, m);
    out.table->add_row({std::to_string(m), std::to_string(b.count), num(b.slope)});
  }
  return out;
}

CommandOutput run_directions(const SumsetOpts& o) {
  const auto rep = direction_coverage(truncate(o.E(), o.depth), truncate(o.F(), o.depth), o.grid);
  CommandOutput out;
  out.table.emplace(std::vector<Column>{{"theta", "radians", kFloat},
                                        {"x", "point of E", kFloat},
                                        {"y", "point of F", kFloat},
                                        {"angle_error", "radians", kFloat}});
  for (const auto& p : rep.pairs) out.table->add_row({num(p.theta), num(p.x), num(p.y), num(p.angle_error)});
  out.checks.push_back({"angle error <= atan(base^-d)", rep.pass,
                        "max " + num(rep.max_angle_error) + " vs " + num(rep.bound)});
  return out;
}

// ---- verify-all ----------------------------------------------------------

struct VerifyOpts {
  std::string profile = "desk";
  std::vector<int> only;
  const GlobalOptions* g = nullptr;
};

CommandOutput run_verify(const VerifyOpts& o) {
  if (o.profile != "desk") throw CLI::ValidationError("--profile", "only the desk profile exists");
  AcceptanceConfig cfg;
  cfg.seed = o.g->seed;
  cfg.only = o.only;
  const auto rs = run_acceptance(cfg);
  CommandOutput out;
  out.default_format = "json";
  out.table.emplace(std::vector<Column>{{"id", "criterion", kExact},
                                        {"name", "label", kExact},
                                        {"pass", "bool", kExact},
                                        {"detail", "text", kExact}});
  for (const auto& r : rs) {
    out.table->add_row({std::to_string(r.id), r.name, flag(r.pass), r.detail});
    out.checks.push_back({"criterion " + std::to_string(r.id) + " " + r.name, r.pass, r.detail});
    out.measured[std::to_string(r.id)] = r.measured;
  }
  return out;
}

}  // namespace

void add_commands(CLI::App& app, const GlobalOptions& g, Handler& sel, std::string& name) {
  {
    auto o = std::make_shared<DimfnOpts>();
    auto* s = leaf<DimfnOpts>(&app, "dimfn", "evaluate and compare dimension functions", sel, name, o, run_dimfn);
    s->add_option("--h", o->h, "dimension function, e.g. x^0.5*log^-2")->required();
    s->add_option("--g", o->g, "second function to compare against");
    s->add_option("--expect", o->expect, "required relation of g to h: Less, Greater or Equivalent");
    s->add_option("--points", o->points, "grid points")->capture_default_str();
    s->add_option("--decades", o->decades, "decades spanned below xmax")->capture_default_str();
    s->add_option("--xmax", o->xmax, "largest x (default min(1/2, domain end))");
  }
  {
    auto o = std::make_shared<DiscrepancyOpts>();
    auto* s = leaf<DiscrepancyOpts>(&app, "discrepancy", "exact covering radius of {(k sqrt2 - j)/n}", sel, name, o,
                                    run_discrepancy);
    s->add_option("--nmax", o->nmax, "largest n")->capture_default_str()->check(CLI::Range(1, 100000));
    s->add_option("--n0", o->n0, "bound must hold from here on")->capture_default_str();
  }
  {
    auto o = std::make_shared<GsetOpts>();
    auto* s = leaf<GsetOpts>(&app, "gset", "build G_n and check every slope on a grid", sel, name, o, run_gset);
    s->add_option("--n", o->n, "single n");
    s->add_option("--nmin", o->nmin, "range start");
    s->add_option("--nmax", o->nmax, "range end");
    s->add_option("--grid", o->grid, "slopes i/(grid-1)")->capture_default_str();
    s->add_flag("--tubes", o->tubes, "include the tube family (single n, JSON)");
  }
  {
    auto o = std::make_shared<FurstOpts>();
    o->g = &g;
    auto* f = app.add_subcommand("furstenberg", "tube constructions and their covering estimates");
    f->require_subcommand(1);
    auto* st = leaf<FurstOpts>(f, "st", "the set S(t) for t = phi^-1(u)", sel, name, o, run_st);
    add_construction_flags(st, *o);
    st->add_option("--n", o->n, "n")->capture_default_str();
    st->add_option("--t", o->t, "u = p/q in Gamma_n")->required();
    auto* un = leaf<FurstOpts>(f, "union", "|union of S(t)| against n^(1+3alpha)", sel, name, o, run_union);
    add_construction_flags(un, *o);
    un->add_option("--n", o->ns, "list of n")->delimiter(',')->capture_default_str();
    un->add_option("--C", o->C, "bound on the ratio")->capture_default_str();
    auto* cv = leaf<FurstOpts>(f, "cover", "rectangle cover of Lambda_n with an audit", sel, name, o, run_cover);
    add_construction_flags(cv, *o);
    cv->add_option("--n", o->n, "n")->capture_default_str();
    cv->add_option("--h", o->h, "dimension function (default x^((1+3alpha)/2) log^-theta)");
    cv->add_option("--theta", o->theta, "log exponent of the default h")->capture_default_str();
    cv->add_option("--audit", o->audit, "sampled tube points")->capture_default_str();
    auto* it = leaf<FurstOpts>(f, "iterate", "iterate the construction F_0, F_1, ...", sel, name, o, run_iterate);
    add_construction_flags(it, *o);
    it->add_option("--levels", o->levels, "number of stages J")->capture_default_str();
    it->add_option("--desk", o->desk, "explicit small n_1..n_J (desk mode)")->delimiter(',');
    it->add_option("--M0", o->M0, "initial tube count")->capture_default_str();
    it->add_option("--delta0", o->delta0, "initial tube width")->capture_default_str();
    it->add_option("--n0", o->n0, "seed of the logpow sequence")->capture_default_str();
    auto* hc = leaf<FurstOpts>(f, "hcost", "h-cost of the covers along the tower sequence", sel, name, o, run_hcost);
    add_construction_flags(hc, *o);
    hc->add_option("--theta", o->theta, "log exponent theta")->required();
    hc->add_option("--levels", o->levels, "terms")->capture_default_str();
    hc->add_option("--expect", o->expect, "to_zero, bounded or to_infinity");
    auto* bx = leaf<FurstOpts>(f, "boxdim", "box-dimension ratios along the logpow sequence", sel, name, o, run_boxdim);
    bx->add_option("--r", o->r, "exponent r")->capture_default_str();
    bx->add_option("--levels", o->levels, "terms")->capture_default_str();
    bx->add_option("--n0", o->n0, "sequence seed")->capture_default_str();
  }
  {
    auto o = std::make_shared<CantorOpts>();
    o->g = &g;
    auto* c = app.add_subcommand("cantor", "nested Cantor constructions");
    c->require_subcommand(1);
    auto* dk = leaf<CantorOpts>(c, "dk", "the sequence D_k^h", sel, name, o, run_dk);
    add_schedule_flags(dk, *o);
    dk->add_option("--expect", o->expect, "positive or zero");
    auto* mdp = leaf<CantorOpts>(c, "mdp", "mass distribution audit", sel, name, o, run_mdp);
    add_schedule_flags(mdp, *o);
    mdp->add_option("--samples", o->samples, "sampled intervals")->capture_default_str();
    auto* ex = leaf<CantorOpts>(c, "ex48", "D_k^h along n_k = exp(k n_{k-1}^(2/r))", sel, name, o, run_cantor_ex48);
    ex->add_option("--h", o->h, "dimension function")->required();
    ex->add_option("--r", o->r, "exponent r")->capture_default_str();
    ex->add_option("--n0", o->n0, "seed n_0")->capture_default_str();
    ex->add_option("--levels", o->levels, "K")->capture_default_str();
    ex->add_option("--expect", o->expect, "positive or zero");
  }
  {
    auto o = std::make_shared<JarnikOpts>();
    o->gl = &g;
    auto* j = app.add_subcommand("jarnik", "well-approximable sets");
    j->require_subcommand(1);
    auto* b = leaf<JarnikOpts>(j, "build", "levels E_k from H_{n_k}", sel, name, o, run_jarnik_build);
    b->add_option("--g", o->g, "x^s or exppow:r")->capture_default_str();
    b->add_option("--n", o->n, "n_1,...,n_K")->delimiter(',')->capture_default_str();
    b->add_option("--inclusion", o->inclusion, "sampled points for the inclusion audit");
    auto* w = leaf<JarnikOpts>(j, "witness", "best rational approximation p/q", sel, name, o, run_witness);
    w->add_option("--x", o->x, "quadratic surd in [0,1], e.g. sqrt(2)-1")->required();
    w->add_option("--qmax", o->qmax, "denominator budget with tolerance 1");
    w->add_option("--n", o->level_n, "level parameter: qmax = floor(f(n)), tolerance 1/n^2");
    w->add_option("--f", o->f, "x or x^s")->capture_default_str();
    auto* sp = leaf<JarnikOpts>(j, "separation", "exact separation of H_n", sel, name, o, run_separation);
    sp->add_option("--g", o->g, "x^s or exppow:r")->capture_default_str();
    sp->add_option("--n", o->level_n, "n")->required();
    auto* cl = leaf<JarnikOpts>(j, "critlow", "liminf expression along n_k = exp(k n_{k-1}^(2/r))", sel, name, o,
                                run_critlow);
    cl->add_option("--r", o->r, "exponent r")->capture_default_str();
    cl->add_option("--theta", o->theta, "h = log^-theta")->capture_default_str();
    cl->add_option("--n0", o->n0, "seed n_0")->capture_default_str();
    cl->add_option("--levels", o->levels, "K")->capture_default_str();
    cl->add_option("--expect", o->expect, "positive or zero");
  }
  {
    auto o = std::make_shared<SumsetOpts>();
    auto* s = app.add_subcommand("sumset", "digit-block sets and their sums");
    s->require_subcommand(1);
    auto* ck = leaf<SumsetOpts>(s, "check", "exact coverage of residues by E + F", sel, name, o, run_sumset_check);
    add_pair_flags(ck, *o);
    auto so = std::make_shared<SumsetOpts>();
    so->base = 2;
    auto* sc = leaf<SumsetOpts>(s, "schedule", "block schedule m_k and h-costs", sel, name, so, run_sumset_schedule);
    sc->add_option("--h", so->h, "dimension function")->capture_default_str();
    sc->add_option("--levels", so->levels, "K")->capture_default_str();
    sc->add_option("--m1", so->m1, "m_1")->capture_default_str();
    sc->add_option("--base", so->base, "digit base")->capture_default_str();
    sc->add_flag("--concrete", so->concrete, "use m_{k+1} = k 2^(m_k)");
    auto* bc = leaf<SumsetOpts>(s, "boxcount", "box counts of E", sel, name, o, run_boxcount);
    add_pair_flags(bc, *o);
    auto* dr = leaf<SumsetOpts>(s, "directions", "match directions to x + y", sel, name, o, run_directions);
    add_pair_flags(dr, *o);
    dr->add_option("--grid", o->grid, "directions in [0, pi/4]")->capture_default_str();
  }
  {
    auto o = std::make_shared<TowersOpts>();
    auto* s = leaf<TowersOpts>(&app, "towers", "level-index sequence tables", sel, name, o, run_towers);
    s->add_option("--kind", o->kind, "ex48 or lemma31")->capture_default_str();
    s->add_option("--r", o->r, "exponent r")->capture_default_str();
    s->add_option("--n0", o->n0, "seed n_0")->capture_default_str();
    s->add_option("--levels", o->levels, "terms")->capture_default_str();
  }
  {
    auto o = std::make_shared<VerifyOpts>();
    o->g = &g;
    auto* s = leaf<VerifyOpts>(&app, "verify-all", "run the acceptance suite", sel, name, o, run_verify);
    s->add_option("--profile", o->profile, "desk")->capture_default_str();
    s->add_option("--only", o->only, "criterion ids")->delimiter(',');
  }
}

}  // namespace smallf::cli

// Python view of the core: thin wrappers returning plain dicts and lists,
// with exact values as strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smallf/acceptance.hpp"
#include "smallf/cantor.hpp"
#include "smallf/dimfn.hpp"
#include "smallf/furstenberg.hpp"
#include "smallf/geometry.hpp"
#include "smallf/jarnik.hpp"
#include "smallf/parallel.hpp"
#include "smallf/primes.hpp"
#include "smallf/sequences.hpp"
#include "smallf/sumset.hpp"
#include "smallf/surd.hpp"

namespace py = pybind11;
using namespace smallf;

namespace {

ConstructionParams alpha_params(const std::string& alpha) {
  ConstructionParams p;
  p.alpha = Rational::parse(alpha);
  return p;
}

py::dict covering_dict(const CoveringRadius& r) {
  py::dict d;
  d["n"] = r.n;
  d["rho"] = r.rho.str();
  d["rho_value"] = r.rho_value;
  d["witness"] = r.witness.str();
  d["bound"] = r.bound;
  d["pass"] = r.pass;
  return d;
}

std::vector<std::string> tower_strings(const std::vector<SignedTower>& v) {
  std::vector<std::string> out;
  for (const auto& t : v) out.push_back(t.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "smallf core bindings";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("set_threads", &set_parallelism, py::arg("threads"));
  m.def("threads", &parallelism);

  py::class_<DimensionFunction>(m, "DimensionFunction")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_static("parse", [](const std::string& s) { return DimensionFunction::parse(s); })
      .def_property_readonly("a", &DimensionFunction::a)
      .def_property_readonly("b", &DimensionFunction::b)
      .def("__call__", &DimensionFunction::eval)
      .def("log_eval_at", &DimensionFunction::log_eval_at, py::arg("L"))
      .def("domain_max", &DimensionFunction::domain_max)
      .def("is_concave", &DimensionFunction::is_concave)
      .def("__str__", &DimensionFunction::str)
      .def("__repr__", [](const DimensionFunction& h) { return "DimensionFunction(" + h.str() + ")"; });
  m.def("compare", [](const DimensionFunction& g, const DimensionFunction& h) { return to_string(compare(g, h)); });

  m.def("covering_radius", [](int n) { return covering_dict(covering_radius(n)); }, py::arg("n"));
  m.def(
      "discrepancy_threshold", [](int nmax) { return scan_discrepancy(nmax).threshold; }, py::arg("nmax"));

  m.def(
      "verify_gset",
      [](int n, int grid) {
        const auto rep = verify_gset(build_Gn(n), grid);
        py::dict d;
        d["all_covered"] = rep.all_covered;
        d["failures"] = rep.failures;
        return d;
      },
      py::arg("n"), py::arg("grid") = 10000);

  m.def(
      "compute_St",
      [](std::int64_t n, const std::string& t, const std::string& alpha) {
        const auto res = compute_St(n, Rational::parse(t), alpha_params(alpha), true);
        std::vector<std::string> vals;
        for (const auto& v : res.values) vals.push_back(v.str());
        py::dict d;
        d["count"] = res.count;
        d["values"] = vals;
        return d;
      },
      py::arg("n"), py::arg("t"), py::arg("alpha") = "1/2");
  m.def(
      "union_St_count",
      [](std::int64_t n, const std::string& alpha) { return union_St_count(n, alpha_params(alpha)); }, py::arg("n"),
      py::arg("alpha") = "1/2");

  m.def(
      "dk_sequence",
      [](const std::vector<std::int64_t>& ms, const std::vector<std::string>& eps, const DimensionFunction& h) {
        std::vector<Rational> e;
        for (const auto& s : eps) e.push_back(Rational::parse(s));
        const auto dk = dk_sequence(CantorSchedule(ms, e), h);
        return py::make_tuple(dk.log_d, to_string(dk.liminf));
      },
      py::arg("m"), py::arg("eps"), py::arg("h"));
  m.def(
      "critlow_ex48",
      [](double r, double theta, double n0, int K) {
        const auto rep = critlow_ex48(r, DimensionFunction(0, theta), n0, K);
        std::vector<SignedTower> v;
        for (const auto& t : rep.terms) v.push_back(t.log_value);
        return py::make_tuple(to_string(rep.liminf), tower_strings(v));
      },
      py::arg("r"), py::arg("theta"), py::arg("n0") = 10.0, py::arg("K") = 10);

  m.def(
      "witness_search",
      [](const std::string& x, std::int64_t qmax) -> py::object {
        const auto w = witness_search(QuadSurd::parse(x), qmax, Rational(1));
        if (!w.witness) return py::none();
        return py::make_tuple(w.witness->p, w.witness->q, w.witness->error.str());
      },
      py::arg("x"), py::arg("qmax"));
  m.def(
      "min_separation",
      [](std::int64_t n, const std::string& g) {
        const auto a = ApproxFunction::parse(g);
        const auto rep = min_separation(build_Hn(n, a), a);
        py::dict d;
        d["pass"] = rep.pass;
        d["min_gap"] = rep.min_gap ? py::object(py::str(rep.min_gap->str())) : py::object(py::none());
        d["gap_bound"] = rep.gap_bound.str();
        return d;
      },
      py::arg("n"), py::arg("g") = "x^3");

  m.def(
      "sumset_covers",
      [](int base, const std::vector<int>& e, const std::vector<int>& f, int depth) {
        const auto cov = sumset_covers(truncate(DigitBlockSet::uniform(base, e), depth),
                                       truncate(DigitBlockSet::uniform(base, f), depth));
        return py::make_tuple(cov.covered, cov.missing);
      },
      py::arg("base"), py::arg("e_digits"), py::arg("f_digits"), py::arg("depth"));

  m.def(
      "tower_sequence",
      [](const std::string& kind, double r, double n0, int count) {
        py::list out;
        for (const auto& t : generate_sequence(parse_sequence_kind(kind), r, n0, count)) {
          py::dict d;
          d["k"] = t.index;
          d["n"] = t.value.str();
          d["ln_n"] = t.log_value.str();
          d["flag_a"] = t.flag_a;
          d["flag_b"] = t.flag_b;
          d["growth"] = t.growth;
          out.append(d);
        }
        return out;
      },
      py::arg("kind"), py::arg("r"), py::arg("n0"), py::arg("count"));

  m.def(
      "primes_in_window", [](std::int64_t n) { return primes_in_window(n); }, py::arg("n"));

  m.def(
      "run_acceptance",
      [](const std::vector<int>& only, std::uint64_t seed) {
        AcceptanceConfig cfg;
        cfg.only = only;
        cfg.seed = seed;
        std::vector<CriterionResult> rs;
        {
          py::gil_scoped_release release;
          rs = run_acceptance(cfg);
        }
        py::list out;
        for (const auto& r : rs) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<int>{}, py::arg("seed") = 0);
}

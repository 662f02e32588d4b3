#include "unitfrac/cli.hpp"
#include "unitfrac/reporting.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;

// Python int <-> Natural / Integer through decimal text, Rational -> Fraction.
namespace pybind11::detail {

template <>
struct type_caster<unitfrac::Natural> {
  PYBIND11_TYPE_CASTER(unitfrac::Natural, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    std::string text = py::str(src);
    if (!text.empty() && text.front() == '-') throw py::value_error("expected a non-negative integer, got " + text);
    value = unitfrac::Natural::parse(text);
    return true;
  }

  static handle cast(const unitfrac::Natural& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<unitfrac::Integer> {
  PYBIND11_TYPE_CASTER(unitfrac::Integer, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    value = unitfrac::Integer(std::string(py::str(src)));
    return true;
  }

  static handle cast(const unitfrac::Integer& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<unitfrac::Rational> {
  PYBIND11_TYPE_CASTER(unitfrac::Rational, const_name("fractions.Fraction"));

  bool load(handle, bool) { return false; }

  static handle cast(const unitfrac::Rational& v, return_value_policy policy, handle parent) {
    auto fraction = py::module_::import("fractions").attr("Fraction");
    object num = reinterpret_steal<object>(type_caster<unitfrac::Integer>::cast(v.numerator(), policy, parent));
    object den = reinterpret_steal<object>(type_caster<unitfrac::Integer>::cast(v.denominator(), policy, parent));
    return fraction(num, den).release();
  }
};

}  // namespace pybind11::detail

namespace {

using namespace unitfrac;

py::tuple triple_tuple(const Triple& t) { return py::make_tuple(t.x(), t.y(), t.z()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unit-fraction decompositions a/n = 1/x + 1/y + 1/z with exact arithmetic.";

  m.def("isqrt", &isqrt, py::arg("m"));
  m.def("perfect_square_root", &perfect_square_root, py::arg("m"));
  m.def("unit_fraction_sum", &unit_fraction_sum, py::arg("x"), py::arg("y"), py::arg("z"));

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("a", [](const Certificate& c) { return c.instance().a(); })
      .def_property_readonly("n", [](const Certificate& c) { return c.instance().n(); })
      .def_property_readonly("triple", [](const Certificate& c) { return triple_tuple(c.triple()); })
      .def_property_readonly("route", [](const Certificate& c) { return std::string(to_string(c.route())); })
      .def_property_readonly("t", &Certificate::witness_t)
      .def_property_readonly("q", &Certificate::witness_q)
      .def_property_readonly("k", &Certificate::witness_k)
      .def("describe", &Certificate::describe)
      .def("__repr__", [](const Certificate& c) { return "<Certificate " + c.describe() + ">"; })
      .def("__eq__", [](const Certificate& l, const Certificate& r) { return l == r; });

  m.def(
      "verify",
      [](const Natural& a, const Natural& n, const Natural& x, const Natural& y, const Natural& z) {
        auto v = verify_decomposition(Instance(a, n), Triple(x, y, z));
        return py::make_tuple(v.holds, v.lhs, v.rhs);
      },
      py::arg("a"), py::arg("n"), py::arg("x"), py::arg("y"), py::arg("z"),
      "Returns (holds, a/n, 1/x + 1/y + 1/z).");
  m.def("trivial_decompose", [](const Natural& a, const Natural& n) { return trivial_decompose(Instance(a, n)); },
        py::arg("a"), py::arg("n"));
  m.def(
      "formula_one_at", [](const Natural& a, const Natural& n, const Natural& x) { return formula_one_at(Instance(a, n), x); },
      py::arg("a"), py::arg("n"), py::arg("x"));
  m.def(
      "formula_two_at",
      [](const Natural& a, const Natural& n, const Natural& x, const Natural& t) {
        return formula_two_at(Instance(a, n), x, t);
      },
      py::arg("a"), py::arg("n"), py::arg("x"), py::arg("t"));
  m.def(
      "explore_t_param",
      [](const Natural& a, const Natural& n, const Natural& x, const Natural& t) {
        return explore_t_param(Instance(a, n), x, t);
      },
      py::arg("a"), py::arg("n"), py::arg("x"), py::arg("t"));
  m.def(
      "q_poly",
      [](const Natural& a, const Natural& n, const Natural& x, const Natural& t) { return q_poly(Instance(a, n), x, t); },
      py::arg("a"), py::arg("n"), py::arg("x"), py::arg("t"));
  m.def("vieta_solve", &vieta_solve, py::arg("s"), py::arg("p"));
  m.def(
      "delta_positive_bounds",
      [](const Natural& a, const Natural& n, const Natural& t) {
        auto b = delta_positive_bounds(Instance(a, n), t);
        return py::make_tuple(b.left_cut, b.right_cut, b.exact);
      },
      py::arg("a"), py::arg("n"), py::arg("t"), "Returns (left_cut, right_cut, exact).");

  py::class_<ScanConfig>(m, "ScanConfig")
      .def(py::init([](std::uint64_t factor, std::uint64_t window, bool stop) {
             ScanConfig cfg{factor, window, stop};
             cfg.validate();
             return cfg;
           }),
           py::arg("x_ceiling_factor") = 10, py::arg("t_window") = 100, py::arg("stop_at_first") = true)
      .def_static("paper_tables", &ScanConfig::paper_tables)
      .def_static("paper_coverage", &ScanConfig::paper_coverage)
      .def_readwrite("x_ceiling_factor", &ScanConfig::x_ceiling_factor)
      .def_readwrite("t_window", &ScanConfig::t_window)
      .def_readwrite("stop_at_first", &ScanConfig::stop_at_first)
      .def("__repr__", [](const ScanConfig& c) {
        return "ScanConfig(x_ceiling_factor=" + std::to_string(c.x_ceiling_factor) +
               ", t_window=" + std::to_string(c.t_window) + ", stop_at_first=" + (c.stop_at_first ? "True" : "False") +
               ")";
      });

  py::class_<CoverageReport>(m, "CoverageReport")
      .def_readonly("a", &CoverageReport::a)
      .def_readonly("n_lo", &CoverageReport::n_lo)
      .def_readonly("n_hi", &CoverageReport::n_hi)
      .def_readonly("captured", &CoverageReport::captured)
      .def_readonly("recalcitrant", &CoverageReport::recalcitrant)
      .def_readonly("percent", &CoverageReport::percent);

  py::class_<MordellReport>(m, "MordellReport")
      .def_readonly("n_lo", &MordellReport::n_lo)
      .def_readonly("n_hi", &MordellReport::n_hi)
      .def_readonly("exceptional", &MordellReport::exceptional)
      .def_readonly("verified", &MordellReport::verified)
      .def_readonly("percent", &MordellReport::percent);

  m.def("mordell_is_exception", &mordell_is_exception, py::arg("n"));
  m.def(
      "formula_one_scan",
      [](const Natural& a, const Natural& n, const ScanConfig& cfg) { return formula_one_scan(Instance(a, n), cfg); },
      py::arg("a"), py::arg("n"), py::arg("config") = ScanConfig{});
  m.def(
      "formula_two_scan",
      [](const Natural& a, const Natural& n, const ScanConfig& cfg) { return formula_two_scan(Instance(a, n), cfg); },
      py::arg("a"), py::arg("n"), py::arg("config") = ScanConfig{});
  m.def(
      "coverage_scan",
      [](const Natural& a, const Natural& lo, const Natural& hi, const ScanConfig& cfg, unsigned jobs,
         std::optional<std::filesystem::path> checkpoint) {
        py::gil_scoped_release release;
        return coverage_scan(a, lo, hi, cfg, RunOptions{jobs, std::move(checkpoint)});
      },
      py::arg("a"), py::arg("n_lo"), py::arg("n_hi"), py::arg("config") = ScanConfig::paper_coverage(),
      py::arg("jobs") = 0, py::arg("checkpoint") = py::none());
  m.def(
      "mordell_scan",
      [](const Natural& lo, const Natural& hi, const ScanConfig& cfg, unsigned jobs) {
        py::gil_scoped_release release;
        return mordell_scan(lo, hi, cfg, RunOptions{jobs, std::nullopt});
      },
      py::arg("n_lo"), py::arg("n_hi"), py::arg("config") = ScanConfig::paper_tables(), py::arg("jobs") = 0);
  m.def(
      "square_scan_fixed_x",
      [](const Natural& a, const Natural& n, const Natural& x, const Natural& t_lo, const Natural& t_hi) {
        py::list out;
        for (const auto& h : square_scan_fixed_x(Instance(a, n), x, t_lo, t_hi)) {
          out.append(py::make_tuple(h.t, h.value, h.root));
        }
        return out;
      },
      py::arg("a"), py::arg("n"), py::arg("x"), py::arg("t_lo"), py::arg("t_hi"),
      "Returns [(t, q_poly, sqrt)] for every square value in the window.");

  m.def("fixture_ids", &fixture_ids);
  m.def(
      "regress_fixture",
      [](const std::string& id, const ScanConfig& cfg, unsigned jobs) {
        auto r = regress_fixture(id, cfg, jobs);
        py::list mismatched;
        for (const auto& mm : r.mismatched) mismatched.append(mm.expected.n);
        return py::make_tuple(r.matched, mismatched);
      },
      py::arg("id"), py::arg("config") = ScanConfig::paper_tables(), py::arg("jobs") = 0,
      "Returns (matched_count, [n of each mismatched row]).");
  m.def(
      "emit",
      [](const std::vector<Certificate>& certs, const std::string& format, unsigned places) {
        auto f = parse_format(format);
        if (!f) throw py::value_error("unknown format '" + format + "'");
        std::vector<TableRow> rows;
        for (const auto& c : certs) rows.push_back(render_row(c.instance(), c, places));
        return emit(rows, *f);
      },
      py::arg("certificates"), py::arg("format") = "csv", py::arg("places") = 4);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entropy_banach/checks.hpp"
#include "entropy_banach/ellone.hpp"
#include "entropy_banach/entropy.hpp"
#include "entropy_banach/entropy_dial.hpp"
#include "entropy_banach/errors.hpp"
#include "entropy_banach/json_io.hpp"
#include "entropy_banach/plmap.hpp"
#include "entropy_banach/universal.hpp"

namespace py = pybind11;
using namespace eb;

namespace {

// Anything fractions.Fraction accepts: int, float (exactly), str, Fraction.
Q to_q(const py::handle& obj) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return parse_q(py::str(fraction(obj)).cast<std::string>());
}

py::object from_q(const Q& x) {
  return py::module_::import("fractions").attr("Fraction")(format_q(x));
}

std::vector<Q> to_qs(const py::iterable& xs) {
  std::vector<Q> out;
  for (const auto& x : xs) out.push_back(to_q(x));
  return out;
}

py::list from_qs(const std::vector<Q>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(from_q(x));
  return out;
}

// Round trip through JSON text for the record types.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::object cert_to_py(const std::optional<HorseshoeCertificate>& c) {
  if (!c) return py::none();
  return to_py(to_json(*c));
}

HorseshoeCertificate cert_from_py(const py::object& obj) {
  std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return certificate_from_json(parse_json_text(text));
}

ScaleSchedule make_schedule(const std::string& kind, const py::object& param, int N) {
  if (kind == "geometric") return geometric_schedule(to_q(param), N);
  if (kind == "hoelder") return hoelder_schedule(to_q(param), N);
  throw ConfigError("schedule kind must be geometric or hoelder");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact piecewise-linear maps and certified entropy bounds";
  m.attr("__version__") = EB_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<DependencyError>(m, "DependencyError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<PLMap>(m, "PLMap")
      .def(py::init([](const py::iterable& xs, const py::iterable& ys) {
             return PLMap(to_qs(xs), to_qs(ys));
           }),
           py::arg("breakpoints"), py::arg("values"))
      .def_property_readonly("breakpoints", [](const PLMap& f) { return from_qs(f.breakpoints()); })
      .def_property_readonly("values", [](const PLMap& f) { return from_qs(f.values()); })
      .def_property_readonly("domain", [](const PLMap& f) {
        return py::make_tuple(from_q(f.domain().lo), from_q(f.domain().hi));
      })
      .def("__call__", [](const PLMap& f, const py::object& x) { return from_q(f(to_q(x))); })
      .def("__len__", &PLMap::size)
      .def("__eq__", [](const PLMap& a, const PLMap& b) { return a == b; })
      .def("to_json", [](const PLMap& f) { return to_json(f).dump(); })
      .def_static("from_json", [](const std::string& s) { return plmap_from_json(parse_json_text(s)); })
      .def("__repr__", [](const PLMap& f) {
        return "PLMap(" + std::to_string(f.size()) + " breakpoints on [" + format_q(f.domain().lo) +
               ", " + format_q(f.domain().hi) + "])";
      });

  m.def("compose", [](const PLMap& f, const PLMap& g) { return compose(f, g); });
  m.def("iterate", [](const PLMap& f, int k) { return iterate(f, k); });
  m.def("lap_count", &lap_count);
  m.def("same_function", &same_function);
  m.def("sup_norm", [](const PLMap& f) { return from_q(sup_norm(f)); });
  m.def("linear_combination", [](const py::iterable& c, const std::vector<PLMap>& fs) {
    return linear_combination(to_qs(c), fs);
  });
  m.def("lap_numbers", [](const PLMap& f, int depth) {
    py::list out;
    for (const auto& z : lap_numbers(f, depth)) out.append(py::int_(py::str(z.get_str())));
    return out;
  });

  m.def(
      "entropy_bounds",
      [](const PLMap& f, int depth) { return to_py(to_json(entropy_bounds(f, depth))); },
      py::arg("f"), py::arg("depth") = 8);
  m.def("horseshoe_max", [](const PLMap& f) {
    auto [d, c] = horseshoe_max(f);
    return py::make_tuple(d, cert_to_py(c));
  });
  m.def("check_certificate",
        [](const PLMap& f, const py::object& cert) { return check_certificate(f, cert_from_py(cert)); });
  m.def("certified_lower_bound", [](const PLMap& f, const py::object& cert) {
    return certified_lower_bound(f, cert_from_py(cert));
  });

  m.def(
      "psi",
      [](const PLMap& f, const std::string& kind, const py::object& param, int N) {
        return psi(f, make_schedule(kind, param, N));
      },
      py::arg("f"), py::arg("kind") = "geometric", py::arg("param") = "2/3", py::arg("N") = 8);
  m.def(
      "psi_horseshoe",
      [](const PLMap& f, int d, const std::string& kind, const py::object& param, int N) {
        return to_py(to_json(psi_horseshoe(f, make_schedule(kind, param, N), d)));
      },
      py::arg("f"), py::arg("d"), py::arg("kind") = "geometric", py::arg("param") = "2/3",
      py::arg("N") = 16);

  m.def("build_An", [](int n) { return build_An(n).a; });
  m.def("solve_An", [](int n, const py::iterable& beta) { return from_qs(solve_An(n, to_qs(beta))); });
  m.def(
      "ell1_witness",
      [](int M, const py::object& tail_factor) {
        return to_py(to_json(ell1_witness(std::nullopt, M, gamma_schedule(M, to_q(tail_factor)))));
      },
      py::arg("M") = 3, py::arg("tail_factor") = 2);

  m.def("theta", [](const py::object& a, int d) { return theta(to_q(a), d); }, py::arg("a"),
        py::arg("d") = 3);
  m.def("rational_enumeration", [](int count) { return from_qs(rational_enumeration(count)); });
  m.def("calkin_wilf", [](int count) { return from_qs(calkin_wilf(count)); });

  m.def(
      "run_acceptance",
      [](const std::vector<int>& only) {
        CheckOptions opts;
        opts.only = only;
        py::list out;
        for (const auto& r : run_acceptance(opts)) out.append(to_py(to_json(r)));
        return out;
      },
      py::arg("only") = std::vector<int>{});
}

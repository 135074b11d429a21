#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kdiamond/audit.hpp"
#include "kdiamond/cli.hpp"
#include "kdiamond/qseries.hpp"
#include "kdiamond/rademacher.hpp"
#include "kdiamond/report.hpp"
#include "kdiamond/turan.hpp"

namespace py = pybind11;
using namespace kdiamond;

// Python int <-> mpz_class through the decimal string, exact at any size.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    value = mpz_class(py::str(src).cast<std::string>());
    return true;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

AuditOptions options(long cap) { return {Precision{std::min(128L, cap)}, cap}; }

}  // namespace

PYBIND11_MODULE(_kdiamond, m) {
  m.doc() = "Exact coefficients, Rademacher series and Turan checks for broken k-diamond partitions.";

  py::register_exception<InapplicableError>(m, "InapplicableError", PyExc_ValueError);

  m.def("delta_coeffs", [](int k, std::size_t order) { return delta_coeffs(k, order).coeffs; }, py::arg("k"),
        py::arg("order"), "Delta_k(0..order).");
  m.def(
      "eta_quotient_coeffs",
      [](const std::vector<std::pair<std::int64_t, std::int64_t>>& factors, std::size_t order) {
        std::vector<EtaFactor> fs;
        for (auto [mm, delta] : factors) fs.push_back({mm, delta});
        return eta_quotient_coeffs(EtaQuotient(std::move(fs)), order).coeffs;
      },
      py::arg("factors"), py::arg("order"), "Coefficients of prod (q^m;q^m)^delta for [(m, delta), ...].");
  m.def("partition_coeffs", [](std::size_t order) { return eta_quotient_coeffs(EtaQuotient::partitions(), order).coeffs; },
        py::arg("order"));

  m.def("count_distinct_real_roots", [](std::vector<mpz_class> c) { return count_distinct_real_roots(IntPoly(std::move(c))); },
        py::arg("coeffs"), "Coefficients low degree first.");
  m.def("is_hyperbolic", [](std::vector<mpz_class> c) { return is_hyperbolic(IntPoly(std::move(c))); }, py::arg("coeffs"));
  m.def("jensen", [](const std::vector<mpz_class>& seq, int d, std::int64_t n) { return jensen(seq, d, n).poly.coeffs(); },
        py::arg("seq"), py::arg("d"), py::arg("n"));
  m.def("log_concave_at", [](const std::vector<mpz_class>& seq, std::int64_t n) { return log_concave_at(seq, n); },
        py::arg("seq"), py::arg("n"));
  m.def("turan3_at", [](const std::vector<mpz_class>& seq, std::int64_t n) { return turan3_at(seq, n); }, py::arg("seq"),
        py::arg("n"));
  m.def(
      "scan",
      [](int k, int d, std::int64_t horizon, std::int64_t margin) {
        const auto series = delta_coeffs(k, static_cast<std::size_t>(horizon + d));
        return parse_json(scan_json(scan_minimal_shift(series.view(), d, horizon, margin, k)));
      },
      py::arg("k"), py::arg("d"), py::arg("horizon") = 2000, py::arg("margin") = -1);
  m.def(
      "multiplicative_violations",
      [](int k, std::int64_t a, std::int64_t b) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& v : multiplicative_check(k, a, b)) out.emplace_back(v.a, v.b);
        return out;
      },
      py::arg("k"), py::arg("max_a"), py::arg("max_b"));

  m.def(
      "applicable",
      [](int k) {
        const auto a = applicable(EtaQuotient::broken_diamond(k));
        return py::make_tuple(a.applicable, a.witness ? py::cast(*a.witness) : py::none(), a.reason);
      },
      py::arg("k"), "(applicable, witness j or None, reason).");
  m.def(
      "verify",
      [](int k, std::int64_t n, long cap) {
        const auto series = delta_coeffs(k, static_cast<std::size_t>(n));
        SussmanEngine engine(EtaQuotient::broken_diamond(k));
        engine.prepare(engine.choose_truncation(n));
        return parse_json(verify_json(verify_point(engine, k, n, series[static_cast<std::size_t>(n)], cap)));
      },
      py::arg("k"), py::arg("n"), py::arg("precision_cap") = 4096);

  m.def("audit_sandwich", [](int k, std::int64_t n, long cap) { return parse_json(audit_json(audit_sandwich(k, n, options(cap)))); },
        py::arg("k"), py::arg("n"), py::arg("precision_cap") = 4096);
  m.def("audit_ratio", [](int k, std::int64_t n, long cap) { return parse_json(audit_json(audit_ratio(k, n, options(cap)))); },
        py::arg("k"), py::arg("n"), py::arg("precision_cap") = 4096);
  m.def(
      "audit_tail_sum",
      [](const std::string& s, std::int64_t N, long cap) {
        return parse_json(audit_json(audit_tail_sum(parse_s(s), N, options(cap))));
      },
      py::arg("s"), py::arg("N"), py::arg("precision_cap") = 4096);
  m.def("audit_x_threshold", [](int k, long cap) { return parse_json(audit_json(audit_x_threshold(k, options(cap)))); },
        py::arg("k"), py::arg("precision_cap") = 4096);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"kdiamond"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}

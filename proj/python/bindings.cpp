#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cenormal/digitstream.hpp"
#include "cenormal/errors.hpp"
#include "cenormal/oracle.hpp"
#include "cenormal/sequences.hpp"
#include "cenormal/stats.hpp"

namespace py = pybind11;
using namespace cenormal;

namespace {

// Accepts int, str ("3/2", "1.5") or fractions.Fraction.
Rational to_rational(const py::handle& value) {
    return parse_rational(py::str(value).cast<std::string>());
}

py::int_ to_pyint(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

XiSpec make_xi(const std::string& spec, std::uint32_t base, const py::handle& c) {
    return XiSpec(SequenceSpec::parse(spec), base, to_rational(c));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Digit streams and exact oracles for generalized Copeland-Erdos numbers";

    auto base_error = py::register_exception<Error>(m, "CenormalError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
    py::register_exception<SequenceExhausted>(m, "SequenceExhausted", base_error.ptr());
    py::register_exception<CapExceeded>(m, "CapExceeded", base_error.ptr());
    py::register_exception<OverflowError>(m, "OverflowError", base_error.ptr());
    py::register_exception<UndefinedStatistic>(m, "UndefinedStatistic", base_error.ptr());
    py::register_exception<ParseError>(m, "ParseError", base_error.ptr());

    // sequences
    py::class_<SequenceSpec>(m, "SequenceSpec")
        .def(py::init(&SequenceSpec::parse), py::arg("text"))
        .def("__str__", &SequenceSpec::to_string)
        .def("__repr__", [](const SequenceSpec& s) { return "SequenceSpec('" + s.to_string() + "')"; })
        .def("__eq__", [](const SequenceSpec& a, const SequenceSpec& b) { return a == b; })
        .def("next_member", [](const SequenceSpec& s, std::uint64_t after) { return next_member(s, after); },
             py::arg("after"))
        .def("is_member", [](const SequenceSpec& s, std::uint64_t n) { return is_member(s, n); }, py::arg("n"))
        .def("counting_function",
             [](const SequenceSpec& s, std::uint64_t x, std::uint64_t cap) { return counting_function(s, x, cap); },
             py::arg("x"), py::arg("cap") = kDefaultCountingCap)
        .def("members",
             [](const SequenceSpec& s, std::size_t count, std::uint64_t after) {
                 MemberCursor cursor(s, after);
                 std::vector<std::uint64_t> out;
                 for (std::size_t i = 0; i < count; ++i) out.push_back(cursor.next());
                 return out;
             },
             py::arg("count"), py::arg("after") = 0);

    // digit streams
    m.def("to_digits", &to_digits, py::arg("n"), py::arg("base"));
    m.def("digit_length", &digit_length, py::arg("n"), py::arg("base"));
    m.def("repetitions",
          [](std::uint64_t n, std::uint32_t base, const py::object& c) { return to_pyint(repetitions(n, base, to_rational(c))); },
          py::arg("n"), py::arg("base"), py::arg("c") = 1);

    py::class_<StreamCursor>(m, "StreamCursor")
        .def(py::init([](const std::string& spec, std::uint32_t base, const py::object& c) {
                 return StreamCursor(make_xi(spec, base, c));
             }),
             py::arg("spec"), py::arg("base"), py::arg("c") = 1)
        .def_static("from_checkpoint", &StreamCursor::from_checkpoint, py::arg("record"))
        .def("next_digit", &StreamCursor::next_digit)
        .def("read",
             [](StreamCursor& cur, std::size_t n) {
                 std::vector<Digit> out(n);
                 cur.read(out);
                 return out;
             },
             py::arg("n"))
        .def("skip_to", &StreamCursor::skip_to, py::arg("n"))
        .def_property_readonly("position", &StreamCursor::position)
        .def("checkpoint", &StreamCursor::checkpoint)
        .def_property_readonly("spec", [](const StreamCursor& cur) { return cur.spec().to_string(); });

    // statistics
    m.def("count_digits",
          [](const std::string& spec, std::uint32_t base, const py::object& c, std::uint64_t n, unsigned chunks) {
              XiSpec xi = make_xi(spec, base, c);
              py::gil_scoped_release release;
              auto counter = count_prefix(xi, n, chunks);
              return std::vector<std::uint64_t>(counter.counts().begin(), counter.counts().end());
          },
          py::arg("spec"), py::arg("base"), py::arg("c"), py::arg("n"), py::arg("chunks") = 1);
    m.def("lil_statistic", &lil_statistic, py::arg("count"), py::arg("n"), py::arg("base"));
    m.def("lil_bound", &lil_bound, py::arg("base"));
    m.def("trajectory",
          [](const std::string& spec, std::uint32_t base, const py::object& c, Digit symbol,
             const std::vector<std::uint64_t>& checkpoints) {
              Trajectory t = trajectory(make_xi(spec, base, c), symbol, checkpoints);
              py::list rows;
              for (const auto& p : t.points) {
                  rows.append(py::make_tuple(p.n, p.count, to_pyint(boost::multiprecision::numerator(p.discrepancy)),
                                             to_pyint(boost::multiprecision::denominator(p.discrepancy)), p.statistic));
              }
              return rows;
          },
          py::arg("spec"), py::arg("base"), py::arg("c"), py::arg("symbol"), py::arg("checkpoints"),
          "Rows (n, count, discrepancy_num, discrepancy_den, statistic).");

    // oracles
    auto params = [](std::uint32_t b, const py::object& c, unsigned k) { return OracleParams(b, to_rational(c), k); };
    m.def("d_exact", [=](std::uint32_t b, const py::object& c, unsigned k) { return to_pyint(d_exact(params(b, c, k))); },
          py::arg("b"), py::arg("c"), py::arg("k"));
    m.def("d_leading", [=](std::uint32_t b, const py::object& c, unsigned k) { return d_leading(params(b, c, k)); },
          py::arg("b"), py::arg("c"), py::arg("k"));
    m.def("ones_exact_champernowne",
          [=](std::uint32_t b, const py::object& c, unsigned k) { return to_pyint(ones_exact_champernowne(params(b, c, k))); },
          py::arg("b"), py::arg("c"), py::arg("k"));
    m.def("ones_excess_leading",
          [=](std::uint32_t b, const py::object& c, unsigned k) { return ones_excess_leading(params(b, c, k)); },
          py::arg("b"), py::arg("c"), py::arg("k"));
    m.def("comparison_deficit",
          [=](const std::string& spec, std::uint32_t b, const py::object& c, unsigned k, std::uint64_t cap) {
              return to_pyint(comparison_deficit(SequenceSpec::parse(spec), params(b, c, k), cap));
          },
          py::arg("spec"), py::arg("b"), py::arg("c"), py::arg("k"), py::arg("cap") = kDefaultCountingCap);
    m.def("alpha_threshold", [](std::uint32_t b, const py::object& c) { return alpha_threshold(b, to_rational(c)); },
          py::arg("b"), py::arg("c") = 1);
    m.def("excess_lower_bound",
          [=](std::uint32_t b, const py::object& c, unsigned k, double alpha) {
              return excess_lower_bound(params(b, c, k), alpha);
          },
          py::arg("b"), py::arg("c"), py::arg("k"), py::arg("alpha"));
    m.def("hypothesis_report",
          [](const std::string& spec, std::uint32_t b, const py::object& c, const std::vector<std::uint64_t>& xs,
             std::uint64_t cap) {
              auto rep = hypothesis_report(SequenceSpec::parse(spec), b, to_rational(c), xs, cap);
              py::list rows;
              for (const auto& r : rep.rows) rows.append(py::make_tuple(r.x, r.count, r.ratio, r.holds));
              return py::make_tuple(rep.threshold, rows);
          },
          py::arg("spec"), py::arg("b"), py::arg("c"), py::arg("xs"), py::arg("cap") = kDefaultCountingCap,
          "(threshold, [(x, A(x), A(x) ln x / x, holds)]).");
    m.def("verify_champernowne",
          [](std::uint32_t b, const py::object& c, unsigned k_first, unsigned k_last) {
              std::vector<VerifyRow> rows;
              Rational cr = to_rational(c);
              {
                  py::gil_scoped_release release;
                  rows = verify_champernowne(b, cr, k_first, k_last);
              }
              py::list out;
              for (const auto& r : rows) {
                  py::dict d;
                  d["k"] = r.k;
                  d["d_exact"] = to_pyint(r.d_exact);
                  d["d_stream"] = to_pyint(r.d_stream);
                  d["ones_exact"] = to_pyint(r.ones_exact);
                  d["ones_stream"] = to_pyint(r.ones_stream);
                  d["match"] = r.match();
                  out.append(d);
              }
              return out;
          },
          py::arg("b"), py::arg("c"), py::arg("k_first"), py::arg("k_last"));
}

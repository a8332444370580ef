#include "hybridcp/cli.hpp"
#include "hybridcp/contractor.hpp"
#include "hybridcp/expr.hpp"
#include "hybridcp/interval.hpp"
#include "hybridcp/model.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hybridcp;

namespace {

Interval apply_unary(const std::string& op, const Interval& x)
{
    if (op == "neg") {
        return -x;
    }
    const auto u = unary_from_name(op);
    if (!u) {
        throw py::value_error("unknown unary operator '" + op + "'");
    }
    return unary_op(*u, x);
}

Interval apply_binary(const std::string& op, const Interval& a, const Interval& b)
{
    if (op == "+") return a + b;
    if (op == "-") return a - b;
    if (op == "*") return a * b;
    if (op == "/") return a / b;
    const auto f = binary_function_from_name(op);
    if (!f) {
        throw py::value_error("unknown binary operator '" + op + "'");
    }
    return binary_op(*f, a, b);
}

py::tuple contract(const ContractorRegistry& reg, std::size_t id, std::vector<double> bounds)
{
    ContractStatus s;
    {
        py::gil_scoped_release release;
        s = reg.contract(id, bounds);
    }
    return py::make_tuple(s, bounds);
}

py::dict solution_dict(const Model& m, const Solution& s)
{
    py::dict d;
    for (std::uint32_t i = 0; i < m.solver->num_ints(); ++i) {
        d[py::str(m.solver->name(IntVar{i}))] = s.ints[i];
    }
    for (std::uint32_t i = 0; i < m.solver->num_reals(); ++i) {
        d[py::str(m.solver->name(RealVar{i}))] = py::make_tuple(s.reals[i].lo(), s.reals[i].hi());
    }
    return d;
}

py::dict solve_model(const std::string& json_text, bool all, std::optional<std::uint64_t> node_limit,
                     std::optional<std::uint64_t> time_limit_ms)
{
    Model m = load_model(json_text);
    SolveOptions options;
    options.all = all;
    options.node_limit = node_limit;
    options.time_limit_ms = time_limit_ms;
    const SolveReport r = solve(m, options);
    py::list solutions;
    for (const auto& s : r.solutions) {
        solutions.append(solution_dict(m, s));
    }
    py::dict out;
    out["status"] = std::string(name(r.status));
    out["solutions"] = solutions;
    out["objective"] = m.objective ? py::object(py::str(m.objective_name)) : py::none();
    out["nodes"] = r.nodes;
    out["fails"] = r.fails;
    out["time_ms"] = r.time_ms;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Interval contractors and a hybrid finite-domain / continuous solver";

    auto parse_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
    py::register_exception<UnknownContractor>(m, "UnknownContractor", PyExc_IndexError);
    py::register_exception<MalformedBounds>(m, "MalformedBounds", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    (void)parse_error;

    py::class_<Interval>(m, "Interval")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_static("empty", &Interval::empty)
        .def_property_readonly("lo", &Interval::lo)
        .def_property_readonly("hi", &Interval::hi)
        .def("is_empty", &Interval::is_empty)
        .def("width", &Interval::width)
        .def("mid", &Interval::mid)
        .def("contains", &Interval::contains)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__repr__", [](const Interval& x) { return "Interval" + to_string(x); });

    m.def("unary", &apply_unary, py::arg("op"), py::arg("x"),
          "Apply a named unary operator (sqr, sqrt, exp, cos, ...).");
    m.def("binary", &apply_binary, py::arg("op"), py::arg("a"), py::arg("b"),
          "Apply + - * / or a named binary function (min, max, pow, atan2).");

    m.def(
        "parse", [](const std::string& text, std::size_t arity) { return to_string(parse(text, arity)); },
        py::arg("text"), py::arg("arity"), "Parse a constraint and return its fully parenthesized form.");

    py::enum_<ContractStatus>(m, "ContractStatus")
        .value("FAIL", ContractStatus::Fail)
        .value("ENTAILED", ContractStatus::Entailed)
        .value("CONTRACT", ContractStatus::Contract)
        .value("NOTHING", ContractStatus::Nothing);

    py::class_<ContractorRegistry>(m, "ContractorRegistry")
        .def(py::init<>())
        .def(
            "create_contractor",
            [](ContractorRegistry& r, const std::vector<std::string>& functions, std::size_t arity) {
                return r.create_contractor(functions, arity);
            },
            py::arg("functions"), py::arg("arity"))
        .def("contract", &contract, py::arg("cont_index"), py::arg("bounds"),
             "Contract flat bounds; returns (status, new bounds).")
        .def("__len__", &ContractorRegistry::size);

    m.def("solve_model", &solve_model, py::arg("json_text"), py::arg("all") = false,
          py::arg("node_limit") = py::none(), py::arg("time_limit_ms") = py::none(),
          "Load a JSON model, solve or minimize it and return the report as a dict.");
}

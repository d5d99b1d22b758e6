#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mforge/expr.hpp"
#include "mforge/io.hpp"

namespace py = pybind11;

namespace {

using mforge::motivic::MotivicElement;
using mforge::motivic::parse_expression;

std::string canonical(const std::string& expr) { return parse_expression(expr).str(); }

py::tuple evaluate(const std::string& expr, long q) {
    mpq_class v = mforge::motivic::evaluate_at(parse_expression(expr), mpz_class(q));
    return py::make_tuple(py::int_(py::str(v.get_num().get_str())),
                          py::int_(py::str(v.get_den().get_str())));
}

std::string exact_div_str(const std::string& a, const std::string& b) {
    return mforge::motivic::exact_div(parse_expression(a), parse_expression(b)).str();
}

std::string solve_shift(const std::string& lhs, const std::string& rhs) {
    return mforge::motivic::solve_L_shift(parse_expression(lhs), parse_expression(rhs)).get_str();
}

mforge::jets::Method method_from(const std::string& name) {
    if (name == "brute") return mforge::jets::Method::brute;
    if (name == "rowreduce") return mforge::jets::Method::rowreduce;
    if (name == "both") return mforge::jets::Method::both;
    mforge::fail(mforge::errc::invalid_input, "unknown method '" + name + "'");
}

std::string jet_count_json(int r, int n, std::int64_t q, const std::string& method, int workers) {
    return mforge::io::groupoid_report(r, n, q, method_from(method), workers).dump();
}

std::string verify_cov_json(const std::string& which, int r) {
    mforge::jets::CovReport rep;
    if (which == "lemma83") {
        rep = mforge::jets::verify_change_of_variables_lemma83(r);
    } else if (which == "example82") {
        rep = mforge::jets::verify_change_of_variables_example82();
    } else {
        mforge::fail(mforge::errc::invalid_input, "unknown case '" + which + "'");
    }
    return mforge::io::cov_report_json(rep).dump();
}

std::string heights_json(const std::string& arc_json) {
    return mforge::io::heights_report(mforge::io::parse_arc_json_text(arc_json)).dump();
}

std::string heights_batch_json(int r, std::int64_t prime, int precision, int count, int vmin,
                               int vmax, std::uint64_t seed) {
    return mforge::io::heights_batch_report(r, prime, precision, count, vmin, vmax, seed, true)
        .dump();
}

std::string resolve_json(const std::string& input_json, const std::string& convention) {
    mforge::crepant::Convention conv;
    if (convention == "certificate") {
        conv = mforge::crepant::Convention::certificate;
    } else if (convention == "paper-literal") {
        conv = mforge::crepant::Convention::paper_literal;
    } else {
        mforge::fail(mforge::errc::invalid_input, "unknown convention '" + convention + "'");
    }
    auto input = mforge::io::parse_resolution_json_text(input_json);
    return mforge::io::descriptor_json(mforge::crepant::build_crepant_stack(input, conv)).dump();
}

std::string group_order_str(int r, int n, std::int64_t q) {
    return mforge::jets::group_order(r, n, q).get_str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact arithmetic for heights, jet counts, and crepant stack descriptors";

    py::register_exception<mforge::error>(m, "ForgeError");

    m.def("canonical", &canonical, py::arg("expr"),
          "canonical form of a motivic expression");
    m.def("evaluate_at", &evaluate, py::arg("expr"), py::arg("q"),
          "realize L = q; returns (numerator, denominator)");
    m.def("exact_div", &exact_div_str, py::arg("a"), py::arg("b"));
    m.def("solve_L_shift", &solve_shift, py::arg("lhs"), py::arg("rhs"),
          "the rational s with lhs = L^s * rhs, as a string");
    m.def("jet_count_json", &jet_count_json, py::arg("r"), py::arg("n"), py::arg("q"),
          py::arg("method") = "rowreduce", py::arg("workers") = 1);
    m.def("group_order", &group_order_str, py::arg("r"), py::arg("n"), py::arg("q"));
    m.def("stabilizer_order", &mforge::jets::stabilizer_order, py::arg("r"), py::arg("n"),
          py::arg("q"));
    m.def("verify_cov_json", &verify_cov_json, py::arg("which"), py::arg("r") = 2);
    m.def("heights_json", &heights_json, py::arg("arc_json"));
    m.def("heights_batch_json", &heights_batch_json, py::arg("r"), py::arg("prime") = 5,
          py::arg("precision") = 16, py::arg("count") = 50, py::arg("vmin") = 1,
          py::arg("vmax") = 4, py::arg("seed") = 0);
    m.def("resolve_json", &resolve_json, py::arg("input_json"),
          py::arg("convention") = "certificate");
}

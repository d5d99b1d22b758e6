#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mforge/expr.hpp"
#include "mforge/io.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) mforge::fail(mforge::errc::invalid_input, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const json& j, bool as_json) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "schema") continue;
        std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                  << "\n";
    }
}

int exit_code_for(const json& report) {
    if (report.contains("pass") && !report["pass"].get<bool>()) return 1;
    if (report.contains("match") && !report["match"].get<bool>()) return 1;
    if (report.contains("all_pass") && !report["all_pass"].get<bool>()) return 1;
    return 0;
}

mforge::jets::Method parse_method(const std::string& name) {
    if (name == "brute") return mforge::jets::Method::brute;
    if (name == "rowreduce") return mforge::jets::Method::rowreduce;
    if (name == "both") return mforge::jets::Method::both;
    mforge::fail(mforge::errc::invalid_input, "unknown method '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"motivic-forge: exact arithmetic for heights, jet counts, and crepant descriptors"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    int precision = 16;
    std::int64_t prime = 5;
    std::uint64_t seed = 0;
    app.add_flag("--json", as_json, "emit a JSON report on stdout");
    app.add_option("--precision", precision, "working precision for series (default 16)");
    app.add_option("--prime", prime, "base prime for series fields, 0 = rationals (default 5)");
    app.add_option("--seed", seed, "seed for random-arc sampling (default 0)");

    // motivic
    auto* motivic_cmd = app.add_subcommand("motivic", "parse and evaluate a motivic expression");
    std::string expr_text;
    long eval_at = 0;
    motivic_cmd->add_option("--expr", expr_text, "expression, e.g. \"(L-1)*L^-3\"")->required();
    motivic_cmd->add_option("--eval-at", eval_at, "realize at L = q (q >= 2)");

    // jets
    auto* jets_cmd = app.add_subcommand("jets", "finite-field jet computations");
    jets_cmd->require_subcommand(1);
    int jr = 2, jn = 1;
    std::int64_t jq = 2;
    std::string method = "rowreduce";
    int workers = 1;
    auto* jets_count = jets_cmd->add_subcommand("count", "groupoid count of the valuation-one cylinder");
    jets_count->add_option("--r", jr)->required();
    jets_count->add_option("--n", jn)->required();
    jets_count->add_option("--q", jq)->required();
    jets_count->add_option("--method", method, "brute | rowreduce | both");
    jets_count->add_option("--workers", workers, "partition count for enumeration");
    auto* jets_order = jets_cmd->add_subcommand("order", "order of the level-n jet group");
    jets_order->add_option("--r", jr)->required();
    jets_order->add_option("--n", jn)->required();
    jets_order->add_option("--q", jq)->required();
    auto* jets_stab = jets_cmd->add_subcommand("stabilizer", "stabilizer order of diag(t,1,...,1)");
    jets_stab->add_option("--r", jr)->required();
    jets_stab->add_option("--n", jn)->required();
    jets_stab->add_option("--q", jq)->required();

    // heights
    auto* heights_cmd = app.add_subcommand("heights", "height profiles along arcs");
    heights_cmd->require_subcommand(1);
    std::string arc_path;
    auto* heights_profile = heights_cmd->add_subcommand("profile", "profile + key identity for one arc");
    heights_profile->add_option("--arc", arc_path, "arc JSON file")->required();
    int hr = 2, hcount = 200, vmin = 1, vmax = 4;
    bool no_euler = false;
    auto* heights_batch = heights_cmd->add_subcommand("batch", "seeded random-arc identity sweep");
    heights_batch->add_option("--r", hr);
    heights_batch->add_option("--count", hcount);
    heights_batch->add_option("--vmin", vmin);
    heights_batch->add_option("--vmax", vmax);
    heights_batch->add_flag("--no-euler", no_euler, "skip the alternating-sum cross-check");

    // verify-cov
    auto* cov_cmd = app.add_subcommand("verify-cov", "change-of-variables coefficient recovery");
    std::string cov_case = "lemma83";
    int cov_r = 2;
    cov_cmd->add_option("--case", cov_case, "lemma83 | example82")->required();
    cov_cmd->add_option("--r", cov_r, "rank for the lemma83 case");

    // resolve
    auto* resolve_cmd = app.add_subcommand("resolve", "build a crepant stack descriptor");
    std::string res_path, convention = "certificate";
    resolve_cmd->add_option("--in", res_path, "resolution JSON file")->required();
    resolve_cmd->add_option("--convention", convention, "certificate | paper-literal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (motivic_cmd->parsed()) {
            auto elem = mforge::motivic::parse_expression(expr_text);
            json out;
            out["schema"] = mforge::io::kSchema;
            out["expr"] = expr_text;
            out["canonical"] = elem.str();
            if (eval_at != 0) out["value"] = mforge::motivic::evaluate_at(elem, mpz_class(eval_at)).get_str();
            emit(out, as_json);
            return 0;
        }
        if (jets_count->parsed()) {
            json out = mforge::io::groupoid_report(jr, jn, jq, parse_method(method), workers);
            emit(out, as_json);
            return exit_code_for(out);
        }
        if (jets_order->parsed()) {
            json out;
            out["schema"] = mforge::io::kSchema;
            out["r"] = jr;
            out["n"] = jn;
            out["q"] = jq;
            out["order"] = mforge::jets::group_order(jr, jn, jq).get_str();
            emit(out, as_json);
            return 0;
        }
        if (jets_stab->parsed()) {
            json out;
            out["schema"] = mforge::io::kSchema;
            out["r"] = jr;
            out["n"] = jn;
            out["q"] = jq;
            out["stabilizer_order"] = mforge::jets::stabilizer_order(jr, jn, jq);
            emit(out, as_json);
            return 0;
        }
        if (heights_profile->parsed()) {
            auto arc = mforge::io::parse_arc_json_text(slurp(arc_path), precision, prime);
            json out = mforge::io::heights_report(arc);
            emit(out, as_json);
            return exit_code_for(out);
        }
        if (heights_batch->parsed()) {
            json out = mforge::io::heights_batch_report(hr, prime, precision, hcount, vmin, vmax,
                                                        seed, !no_euler);
            emit(out, as_json);
            return exit_code_for(out);
        }
        if (cov_cmd->parsed()) {
            mforge::jets::CovReport rep;
            if (cov_case == "lemma83") {
                rep = mforge::jets::verify_change_of_variables_lemma83(cov_r);
            } else if (cov_case == "example82") {
                rep = mforge::jets::verify_change_of_variables_example82();
            } else {
                mforge::fail(mforge::errc::invalid_input, "unknown case '" + cov_case + "'");
            }
            json out = mforge::io::cov_report_json(rep);
            emit(out, as_json);
            return exit_code_for(out);
        }
        if (resolve_cmd->parsed()) {
            auto input = mforge::io::parse_resolution_json_text(slurp(res_path));
            mforge::crepant::Convention conv;
            if (convention == "certificate") {
                conv = mforge::crepant::Convention::certificate;
            } else if (convention == "paper-literal") {
                conv = mforge::crepant::Convention::paper_literal;
            } else {
                mforge::fail(mforge::errc::invalid_input, "unknown convention '" + convention + "'");
            }
            auto descriptor = mforge::crepant::build_crepant_stack(input, conv);
            json out = mforge::io::descriptor_json(descriptor);
            if (conv == mforge::crepant::Convention::paper_literal)
                out["warning"] =
                    "paper-literal rank convention: per-divisor residuals are reported, not asserted zero";
            emit(out, as_json);
            // Residuals are expected under the paper-literal convention.
            if (conv == mforge::crepant::Convention::certificate && !descriptor.crepant) return 1;
            return 0;
        }
    } catch (const mforge::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case mforge::errc::certificate_failed:
            case mforge::errc::not_stabilized:
                return 1;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

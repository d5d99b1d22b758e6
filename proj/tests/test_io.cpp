#include <doctest.h>

#include "mforge/io.hpp"

using namespace mforge;
using series::Fp;
using series::Rat;
using series::Series;

TEST_CASE("series literals") {
    Rat zero(0);
    auto s = io::parse_series_literal<Rat>("t^2+3*t^5", 8, zero);
    CHECK(s.coeff(2) == Rat(1));
    CHECK(s.coeff(5) == Rat(3));
    CHECK(s.valuation() == Valuation::exact(2));

    CHECK(io::parse_series_literal<Rat>("0", 8, zero).is_zero_to_precision());
    CHECK(io::parse_series_literal<Rat>("1+t", 8, zero).coeff(0) == Rat(1));
    CHECK(io::parse_series_literal<Rat>("2*t", 8, zero).coeff(1) == Rat(2));
    CHECK(io::parse_series_literal<Rat>("1 - t^3", 8, zero).coeff(3) == Rat(-1));
    CHECK(io::parse_series_literal<Fp>("3+4*t", 8, Fp(0, 3)).coeff(1).value() == 1);

    CHECK_THROWS_AS(io::parse_series_literal<Rat>("t^", 8, zero), error);
    CHECK_THROWS_AS(io::parse_series_literal<Rat>("", 8, zero), error);
    CHECK_THROWS_AS(io::parse_series_literal<Rat>("t t", 8, zero), error);
}

TEST_CASE("arc json round trip through the report") {
    std::string text =
        R"({"family":"slr","r":2,"matrix":[["t","1"],["0","t"]],"precision":16,"prime":5})";
    auto arc = io::parse_arc_json_text(text);
    CHECK(arc.family == "slr");
    CHECK(arc.r == 2);
    auto rep = io::heights_report(arc);
    CHECK(rep["schema"] == io::kSchema);
    CHECK(rep["val_det"] == 2);
    CHECK(rep["profile"]["ht0"] == 0);
    CHECK(rep["profile"]["ht1"] == 2);
    CHECK(rep["identity"]["pass"] == true);
    CHECK(rep["euler_valuation"] == -2);

    // The rational path computes the same profile.
    std::string qtext =
        R"({"family":"slr","r":2,"matrix":[["t","1"],["0","t"]],"precision":16,"prime":0})";
    auto qrep = io::heights_report(io::parse_arc_json_text(qtext));
    CHECK(qrep["profile"] == rep["profile"]);
}

TEST_CASE("hypersurface arc report") {
    std::string text =
        R"({"family":"hypersurface","f":"x0^3-x1^2","coords":["t^2","t^3"],"precision":16,"prime":0})";
    auto rep = io::heights_report(io::parse_arc_json_text(text));
    CHECK(rep["jacobian_order"] == 3);
}

TEST_CASE("groupoid report matches the documented shape") {
    auto rep = io::groupoid_report(2, 1, 2, jets::Method::both, 1);
    CHECK(rep["numerator"] == 24);
    CHECK(rep["denominator"] == 48);
    CHECK(rep["symbolic"] == "(L-1)*L^-1");
    CHECK(rep["match"] == true);
    CHECK(rep["schema"] == "motivic-forge/1");
}

TEST_CASE("resolution json") {
    std::string text =
        R"({"name":"x","gorenstein_index":6,"divisors":[{"label":"E1","discrepancy":"-1/2"},{"label":"E2","discrepancy":"-2/3"}]})";
    auto input = io::parse_resolution_json_text(text);
    CHECK(input.divisors.size() == 2);
    CHECK(input.divisors[1].discrepancy == mpq_class(-2, 3));
    auto desc = crepant::build_crepant_stack(input);
    auto rep = io::descriptor_json(desc);
    CHECK(rep["crepant"] == true);
    CHECK(rep["factors"][1]["d"] == 3);

    CHECK_THROWS_AS(io::parse_resolution_json_text("{"), error);
    CHECK_THROWS_AS(io::parse_resolution_json_text(R"({"divisors":{}})"), error);
}

TEST_CASE("batch report is deterministic in the seed") {
    auto a = io::heights_batch_report(2, 5, 16, 10, 1, 4, 7, true);
    auto b = io::heights_batch_report(2, 5, 16, 10, 1, 4, 7, true);
    CHECK(a == b);
    CHECK(a["all_pass"] == true);
    CHECK(a["seed"] == 7);
    auto c = io::heights_batch_report(2, 5, 16, 10, 1, 4, 8, true);
    CHECK(c["seed"] == 8);
}

#include <doctest.h>

#include <random>

#include "mforge/expr.hpp"

using namespace mforge;
using motivic::MotivicElement;
using motivic::parse_expression;

TEST_CASE("parses the worked expressions") {
    CHECK(parse_expression("(L-1)*L^-3") ==
          motivic::torus_class() * MotivicElement::lefschetz_power(-3));
    CHECK(parse_expression("e(SL 2)") == motivic::special_linear_class(2));
    CHECK(parse_expression("e(GL 3)") == motivic::general_linear_class(3));
    CHECK(parse_expression("e(A 4)") == motivic::affine_space_class(4));
    CHECK(parse_expression("e(Gm)") == motivic::torus_class());
    CHECK(parse_expression("e(jetSL 2 1)") ==
          motivic::jet_group_class(motivic::builtin_group::special_linear, 2, 1));
    CHECK(parse_expression("L^(1/2)") == MotivicElement::lefschetz_power(mpq_class(1, 2)));
    CHECK(parse_expression("2 + 3*L") == MotivicElement(2) + MotivicElement(3) * MotivicElement::lefschetz());
}

TEST_CASE("parse errors carry offsets") {
    try {
        parse_expression("L^(1/");
        FAIL("expected a parse error");
    } catch (const error& e) {
        CHECK(e.kind() == errc::parse_error);
        CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expression("e(XYZ 1)"), error);
    CHECK_THROWS_AS(parse_expression("L +"), error);
    CHECK_THROWS_AS(parse_expression("(L"), error);
    CHECK_THROWS_AS(parse_expression(""), error);
}

TEST_CASE("print then parse is the identity on canonical forms") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 200) {
        MotivicElement acc;
        int terms = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < terms; ++i) {
            long num = static_cast<long>(rng() % 15) - 7;
            long den = 1 + static_cast<long>(rng() % 3);
            mpq_class e(num, den);
            e.canonicalize();
            long coeff = static_cast<long>(rng() % 9) - 4;
            acc = acc + MotivicElement::monomial(mpz_class(coeff), e);
        }
        if (acc.is_zero()) continue;
        CHECK(parse_expression(acc.str()) == acc);
        ++done;
    }
    CHECK(parse_expression(MotivicElement::zero().str()) == MotivicElement::zero());
}

#include <doctest.h>

#include "mforge/series.hpp"

using namespace mforge;
using series::Fp;
using series::Rat;
using series::Series;

namespace {

Series<Rat> q_poly(std::initializer_list<long> coeffs, int prec) {
    Series<Rat> s = Series<Rat>::zeros(prec, Rat(0));
    int k = 0;
    for (long c : coeffs) s = s + Series<Rat>::monomial(Rat(c), k++, prec);
    return s;
}

}  // namespace

TEST_CASE("valuation") {
    Series<Rat> s = Series<Rat>::monomial(Rat(1), 2, 8) + Series<Rat>::monomial(Rat(1), 5, 8);
    CHECK(s.valuation() == Valuation::exact(2));
    CHECK(Series<Rat>::zeros(8, Rat(0)).valuation() == Valuation::at_least(8));
    CHECK(q_poly({3, 1}, 8).valuation() == Valuation::exact(0));
}

TEST_CASE("arithmetic carries the minimum precision") {
    Series<Rat> a = q_poly({1, 1}, 8);
    Series<Rat> b = q_poly({0, 2}, 5);
    CHECK((a + b).precision() == 5);
    CHECK((a * b).precision() == 5);
    CHECK((a * b).coeff(1) == Rat(2));
    CHECK((a * b).coeff(2) == Rat(2));
}

TEST_CASE("division by a valuation-v series costs v digits") {
    Series<Rat> num = Series<Rat>::monomial(Rat(1), 3, 10);
    Series<Rat> den = Series<Rat>::monomial(Rat(1), 1, 10) + Series<Rat>::monomial(Rat(1), 2, 10);
    Series<Rat> q = num.divided_by(den);
    CHECK(q.precision() == 9);
    CHECK((q * den).agrees_with(num));
    CHECK(q.valuation() == Valuation::exact(2));

    CHECK_THROWS_AS(num.divided_by(Series<Rat>::zeros(10, Rat(0))), error);
}

TEST_CASE("prime field arithmetic") {
    Fp a(3, 5), b(4, 5);
    CHECK((a + b).value() == 2);
    CHECK((a * b).value() == 2);
    CHECK((a / b).value() == 2);  // 3 * 4^{-1} = 3 * 4 = 12 = 2 (mod 5)
    CHECK((b.inverse() * b).value() == 1);
    Series<Fp> s = Series<Fp>::monomial(Fp(5, 5), 0, 4);
    CHECK(s.valuation() == Valuation::at_least(4));  // 5 = 0 in F_5
}

TEST_CASE("valuation min combiner is honest about bounds") {
    // Exact(3) vs AtLeast(2): a hidden order in [2,3) is possible.
    Valuation combined = Valuation::min(Valuation::exact(3), Valuation::at_least(2));
    CHECK(!combined.is_exact);
    CHECK(combined.value == 2);
    CHECK(Valuation::min(Valuation::exact(1), Valuation::at_least(4)) == Valuation::exact(1));
    CHECK(Valuation::min(Valuation::at_least(3), Valuation::at_least(7)) == Valuation::at_least(3));
}

#include <doctest.h>

#include <random>

#include "mforge/crepant.hpp"

using namespace mforge;
using namespace mforge::crepant;
using divisor::DivisorSum;
using divisor::MultiplicityTable;

TEST_CASE("discrepancy decomposition") {
    CHECK(decompose_discrepancy(mpq_class(-1, 2)) == std::pair<long, long>{1, 2});
    CHECK(decompose_discrepancy(mpq_class(0)) == std::pair<long, long>{1, 1});
    CHECK(decompose_discrepancy(mpq_class(1, 3)) == std::pair<long, long>{4, 3});
    try {
        decompose_discrepancy(mpq_class(-1));
        FAIL("expected not_log_terminal");
    } catch (const error& e) {
        CHECK(e.kind() == errc::not_log_terminal);
    }
    CHECK_THROWS_AS(decompose_discrepancy(mpq_class(-3, 2)), error);
}

TEST_CASE("decompose then recompose is the identity") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        long den = 1 + static_cast<long>(rng() % 1000);
        long num = static_cast<long>(rng() % (4 * den)) - den + 1;  // > -den, i.e. m > -1
        mpq_class m(num, den);
        m.canonicalize();
        auto [r, d] = decompose_discrepancy(m);
        CHECK(mpq_class(r, d) - 1 == m);
        CHECK(std::gcd(r, d) == 1);
    }
}

TEST_CASE("canonical divisors of the framed-bundle stacks") {
    CHECK(canonical_Mr(2) == DivisorSum::single("D", mpq_class(-1)));
    CHECK(canonical_Mr(1).is_zero());
    CHECK(canonical_Mr(3) == DivisorSum::single("D", mpq_class(-2)));

    CHECK(canonical_root(2, 3) == DivisorSum::single("det_3*D'", mpq_class(1, 3)));
    CHECK(canonical_root(1, 2) == DivisorSum::single("det_2*D'", mpq_class(1, 2)));

    // d = 1 specializes to the untwisted case under det_1*D' = D.
    for (long r = 1; r <= 4; ++r) {
        DivisorSum rooted = divisor::pullback(canonical_root(r, 1), root_pullback_table("det_1*D'", "D", 1));
        CHECK(rooted == canonical_Mr(r));
    }
}

TEST_CASE("divisor calculus") {
    // Composition with cancellation: m = 1/2 gives K upstairs -D_red while
    // the pulled-back discrepancy contributes +D_red.
    DivisorSum k_upper = DivisorSum::single("D_red", mpq_class(-1));
    DivisorSum k_lower = DivisorSum::single("D", mpq_class(1, 2));
    MultiplicityTable table = {{"D", {{"D_red", mpq_class(2)}}}};
    CHECK(divisor::compose(k_upper, k_lower, table).is_zero());

    // Product of n copies is the sum of the pullbacks.
    std::vector<std::pair<DivisorSum, MultiplicityTable>> factors;
    for (int i = 0; i < 3; ++i) {
        std::string label = "D" + std::to_string(i);
        factors.push_back({DivisorSum::single("D", mpq_class(-1)),
                           MultiplicityTable{{"D", {{label, mpq_class(1)}}}}});
    }
    DivisorSum prod = divisor::product(factors);
    CHECK(prod.coeff("D0") == -1);
    CHECK(prod.coeff("D1") == -1);
    CHECK(prod.coeff("D2") == -1);

    // Identity table leaves a divisor unchanged.
    MultiplicityTable id_table = {{"D", {{"D", mpq_class(1)}}}};
    DivisorSum d = DivisorSum::single("D", mpq_class(5, 3));
    CHECK(divisor::pullback(d, id_table) == d);

    try {
        divisor::pullback(DivisorSum::single("E", 1), id_table);
        FAIL("expected unknown_label");
    } catch (const error& e) {
        CHECK(e.kind() == errc::unknown_label);
    }

    // Pullback distributes over sums; composition of tables is associative.
    DivisorSum a = DivisorSum::single("D", mpq_class(2)) + DivisorSum::single("E", mpq_class(-1));
    MultiplicityTable t2 = {{"D", {{"X", mpq_class(3)}}}, {"E", {{"X", mpq_class(1)}, {"Y", mpq_class(2)}}}};
    CHECK(divisor::pullback(a, t2) ==
          divisor::pullback(DivisorSum::single("D", mpq_class(2)), t2) +
              divisor::pullback(DivisorSum::single("E", mpq_class(-1)), t2));
}

namespace {

SNCResolutionInput single_divisor(const mpq_class& m, long index) {
    SNCResolutionInput in;
    in.name = "test";
    in.gorenstein_index = index;
    in.divisors.push_back({"E1", m, 0});
    return in;
}

}  // namespace

TEST_CASE("descriptor construction on worked inputs") {
    auto half = build_crepant_stack(single_divisor(mpq_class(-1, 2), 2));
    CHECK(half.factors.size() == 1);
    CHECK(half.factors[0].r == 1);
    CHECK(half.factors[0].d == 2);
    CHECK(half.factors[0].rank == 1);
    CHECK(half.certificate[0].lhs == 0);
    CHECK(half.certificate[0].passes);
    CHECK(half.crepant);

    auto zero = build_crepant_stack(single_divisor(mpq_class(0), 1));
    CHECK(zero.factors[0].r == 1);
    CHECK(zero.factors[0].d == 1);
    CHECK(zero.factors[0].rank == 1);
    CHECK(zero.factors[0].coefficient == 0);
    CHECK(zero.crepant);

    auto one = build_crepant_stack(single_divisor(mpq_class(1), 1));
    CHECK(one.factors[0].r == 2);
    CHECK(one.factors[0].d == 1);
    CHECK(one.factors[0].rank == 2);
    CHECK(one.factors[0].coefficient == mpq_class(-1));
    CHECK(one.crepant);
    CHECK(one.moduli_interpretation.find("rank-2") != std::string::npos);
}

TEST_CASE("crepancy check") {
    auto half = build_crepant_stack(single_divisor(mpq_class(-1, 2), 2));
    DivisorSum resolution_K = DivisorSum::single("E1", mpq_class(-1, 2));
    CHECK(check_crepancy(half, resolution_K).crepant);

    // Hand-corrupt the rank: the residual is -1 per divisor.
    StackDescriptor corrupted = half;
    corrupted.factors[0].rank += 1;
    corrupted.relative_canonical = DivisorSum::single("E1_red", mpq_class(half.factors[0].d - corrupted.factors[0].rank));
    auto chk = check_crepancy(corrupted, resolution_K);
    CHECK(!chk.crepant);
    CHECK(chk.residual == DivisorSum::single("E1_red", mpq_class(-1)));

    // No divisors: already smooth, trivially crepant.
    SNCResolutionInput smooth;
    smooth.name = "smooth";
    auto d = build_crepant_stack(smooth);
    CHECK(d.crepant);
    CHECK(check_crepancy(d, DivisorSum()).crepant);
}

TEST_CASE("paper-literal convention reports a residual") {
    auto d = build_crepant_stack(single_divisor(mpq_class(-1, 2), 2), Convention::paper_literal);
    CHECK(d.factors[0].rank == 2);
    CHECK(d.certificate[0].lhs == mpq_class(-1));
    CHECK(!d.certificate[0].passes);
    CHECK(!d.crepant);
    DivisorSum resolution_K = DivisorSum::single("E1", mpq_class(-1, 2));
    CHECK(check_crepancy(d, resolution_K).residual == DivisorSum::single("E1_red", mpq_class(-1)));
}

TEST_CASE("certificate convention closes on random log-terminal inputs") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        SNCResolutionInput in;
        in.name = "random";
        long index = 1;
        int n = 1 + static_cast<int>(rng() % 5);
        DivisorSum resolution_K;
        for (int i = 0; i < n; ++i) {
            long den = 1 + static_cast<long>(rng() % 12);
            long num = static_cast<long>(rng() % (3 * den)) - den + 1;
            mpq_class m(num, den);
            m.canonicalize();
            index = std::lcm(index, m.get_den().get_si());
            std::string label = "E" + std::to_string(i);
            in.divisors.push_back({label, m, 0});
            resolution_K.add(label, m);
        }
        in.gorenstein_index = index;
        auto d = build_crepant_stack(in, Convention::certificate);
        CHECK(d.crepant);
        for (const auto& cert : d.certificate) CHECK(cert.passes);
        CHECK(check_crepancy(d, resolution_K).crepant);
    }
}

TEST_CASE("input validation") {
    SNCResolutionInput dup;
    dup.gorenstein_index = 2;
    dup.divisors.push_back({"E", mpq_class(-1, 2), 0});
    dup.divisors.push_back({"E", mpq_class(0), 0});
    CHECK_THROWS_AS(build_crepant_stack(dup), error);

    // Index that does not clear the discrepancy denominators.
    CHECK_THROWS_AS(build_crepant_stack(single_divisor(mpq_class(-1, 2), 1)), error);

    // Non-reduced override scales both entries.
    SNCResolutionInput scaled = single_divisor(mpq_class(-1, 2), 2);
    scaled.divisors[0].denominator_override = 4;
    auto d = build_crepant_stack(scaled);
    CHECK(d.factors[0].r == 2);
    CHECK(d.factors[0].d == 4);
    CHECK(d.crepant);  // the ledger still closes
}

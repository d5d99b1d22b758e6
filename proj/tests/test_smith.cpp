#include <doctest.h>

#include <random>

#include "mforge/smith.hpp"

using namespace mforge;
using series::Fp;
using series::Mat;
using series::Rat;
using series::Series;

namespace {

constexpr int kPrec = 16;

Series<Fp> fzero() { return Series<Fp>::zeros(kPrec, Fp(0, 5)); }
Series<Fp> fmono(long c, int k) { return Series<Fp>::monomial(Fp(c, 5), k, kPrec); }

Series<Rat> qzero() { return Series<Rat>::zeros(kPrec, Rat(0)); }
Series<Rat> qmono(long c, int k) { return Series<Rat>::monomial(Rat(c), k, kPrec); }

Mat<Fp> identity_f(int n) {
    Mat<Fp> m(n, n, fzero());
    for (int i = 0; i < n; ++i) m.at(i, i) = fmono(1, 0);
    return m;
}

Series<Fp> random_series(std::mt19937_64& rng, int max_deg) {
    Series<Fp> s = fzero();
    for (int k = 0; k <= max_deg; ++k)
        s = s + fmono(static_cast<long>(rng() % 5), k);
    return s;
}

// Product of elementary operations: unit diagonal scalings and transvections.
// Returns the matrix and its inverse.
std::pair<Mat<Fp>, Mat<Fp>> random_unimodular(std::mt19937_64& rng, int n) {
    Mat<Fp> p = identity_f(n);
    Mat<Fp> pinv = identity_f(n);
    Series<Fp> one = fmono(1, 0);
    for (int step = 0; step < 3 * n; ++step) {
        int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (i == j) {
            long u = 1 + static_cast<long>(rng() % 4);
            Series<Fp> unit = fmono(u, 0) + fmono(1, 1) * random_series(rng, 2);
            Series<Fp> unit_inv = one.divided_by(unit).truncated(kPrec);
            for (int c = 0; c < n; ++c) p.at(i, c) = p.at(i, c) * unit;
            for (int r = 0; r < n; ++r) pinv.at(r, i) = pinv.at(r, i) * unit_inv;
            continue;
        }
        Series<Fp> f = random_series(rng, 3);
        // p <- E p with E = I + f e_i e_j^T;  pinv <- pinv E^{-1}.
        for (int c = 0; c < n; ++c) p.at(i, c) = p.at(i, c) + f * p.at(j, c);
        for (int r = 0; r < n; ++r) pinv.at(r, j) = pinv.at(r, j) - pinv.at(r, i) * f;
    }
    return {p, pinv};
}

}  // namespace

TEST_CASE("smith normal form of a diagonal matrix") {
    Mat<Rat> m(2, 2, qzero());
    m.at(0, 0) = qmono(1, 1);
    m.at(1, 1) = qmono(1, 2);
    auto rep = series::smith_normal_form(m);
    CHECK(rep.invariant_valuations == std::vector<int>{1, 2});
    CHECK(rep.rank == 2);
    CHECK(rep.certified);
}

TEST_CASE("smith normal form against the gcd-of-minors oracle") {
    // [[t, t], [t, 2t]]: the 1x1 minors have gcd of valuation 1 and the
    // determinant has valuation 2, so the invariant valuations are [1, 1].
    Mat<Rat> m(2, 2, qzero());
    m.at(0, 0) = qmono(1, 1);
    m.at(0, 1) = qmono(1, 1);
    m.at(1, 0) = qmono(1, 1);
    m.at(1, 1) = qmono(2, 1);
    CHECK(series::fitting_order_minors(m, 1) == Valuation::exact(1));
    CHECK(series::laplace_det(m).valuation() == Valuation::exact(2));
    auto rep = series::smith_normal_form(m);
    CHECK(rep.invariant_valuations == std::vector<int>{1, 1});
}

TEST_CASE("indistinguishable-from-zero blocks refuse to certify") {
    Mat<Rat> m(1, 1, Series<Rat>::zeros(4, Rat(0)));  // t^7 truncated at t^4 stores as 0
    CHECK_THROWS_AS(series::smith_normal_form(m), error);
    try {
        series::smith_normal_form(m);
    } catch (const error& e) {
        CHECK(e.kind() == errc::insufficient_precision);
    }
}

TEST_CASE("invariant valuations survive unimodular conjugation") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        Mat<Fp> core(n, n, fzero());
        std::vector<int> expected;
        int e = static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) {
            // Keep the invariant sum well inside the precision margin.
            e += static_cast<int>(rng() % 2);
            expected.push_back(e);
            core.at(i, i) = fmono(1 + static_cast<long>(rng() % 4), e);
        }
        auto [u, u_inv] = random_unimodular(rng, n);
        auto [v, v_inv] = random_unimodular(rng, n);
        auto rep = series::smith_normal_form(u * core * v);
        CHECK(rep.invariant_valuations == expected);
        CHECK(rep.certified);
    }
}

TEST_CASE("invariant sum equals determinant valuation for torsion cokernels") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        Mat<Fp> core(n, n, fzero());
        int total = 0;
        for (int i = 0; i < n; ++i) {
            int e = static_cast<int>(rng() % 3);
            total += e;
            core.at(i, i) = fmono(1 + static_cast<long>(rng() % 4), e);
        }
        auto [u, u_inv] = random_unimodular(rng, n);
        auto [v, v_inv] = random_unimodular(rng, n);
        Mat<Fp> m = u * core * v;
        auto rep = series::smith_normal_form(m);
        int sum = 0;
        for (int inv : rep.invariant_valuations) sum += inv;
        CHECK(sum == total);
        CHECK(series::laplace_det(m).valuation() == Valuation::exact(total));
    }
}

TEST_CASE("fitting orders on the worked presentations") {
    // Cofactor column of diag(t, 1): a unit entry makes Fitt_3 trivial.
    Mat<Rat> d0(4, 1, qzero());
    d0.at(0, 0) = qmono(1, 0);
    d0.at(3, 0) = qmono(1, 1);
    CHECK(series::fitting_order(d0, 3) == Valuation::exact(0));

    Mat<Rat> m(1, 1, qzero());
    m.at(0, 0) = qmono(1, 2);
    CHECK(series::fitting_order(m, 0) == Valuation::exact(2));

    // The action matrix of diag(t, 1): 3x3 minor valuations {2, inf, 1, inf}.
    Mat<Rat> d1(3, 4, qzero());
    d1.at(0, 0) = qmono(1, 1);
    d1.at(0, 3) = qmono(-1, 0);
    d1.at(1, 1) = qmono(1, 0);
    d1.at(2, 2) = qmono(1, 1);
    CHECK(series::fitting_order(d1, 0) == Valuation::exact(1));
}

TEST_CASE("fitting order conventions") {
    Mat<Rat> m(2, 2, qzero());
    m.at(0, 0) = qmono(1, 1);
    m.at(1, 1) = qmono(1, 1);
    CHECK(series::fitting_order(m, 2) == Valuation::exact(0));   // Fitt_j = (1) for j >= rows
    CHECK(series::fitting_order(m, 5) == Valuation::exact(0));
    Mat<Rat> tall(3, 1, qzero());
    tall.at(0, 0) = qmono(1, 1);
    CHECK(!series::fitting_order(tall, 0).is_exact);  // no 3x3 minors: zero ideal
}

TEST_CASE("minor enumeration agrees with the smith route") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 2 + static_cast<int>(rng() % 3);
        int cols = 2 + static_cast<int>(rng() % 3);
        Mat<Fp> m(rows, cols, fzero());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m.at(i, j) = random_series(rng, 3) * fmono(1, static_cast<int>(rng() % 3));
        for (int j = 0; j < rows; ++j) {
            Valuation a = series::fitting_order_minors(m, j);
            Valuation b = series::fitting_order_snf(m, j);
            if (a.is_exact && b.is_exact) {
                CHECK(a.value == b.value);
            } else {
                CHECK(a.is_exact == b.is_exact);
            }
        }
    }
}

TEST_CASE("torsion lengths against fitting orders: worked instances") {
    // alpha = t * inclusion into R^2, beta = projection scaled by t^2.
    Mat<Rat> alpha(2, 1, qzero());
    alpha.at(0, 0) = qmono(1, 1);
    Mat<Rat> beta(1, 2, qzero());
    beta.at(0, 1) = qmono(1, 2);
    auto rep = series::lemma33_check(alpha, beta, 1, 1);
    CHECK(rep.dim_Q == 1);
    CHECK(rep.fitt_Q == Valuation::exact(1));
    CHECK(rep.dim_coker_beta == 2);
    CHECK(rep.fitt_coker_beta == Valuation::exact(2));

    // Identity column with an empty row block: everything vanishes.
    Mat<Rat> id_col(1, 1, qzero());
    id_col.at(0, 0) = qmono(1, 0);
    Mat<Rat> zero_row(0, 1, qzero());
    auto rep2 = series::lemma33_check(id_col, zero_row, 1, 0);
    CHECK(rep2.dim_Q == 0);
    CHECK(rep2.fitt_Q == Valuation::exact(0));
    CHECK(rep2.dim_coker_beta == 0);
}

TEST_CASE("torsion lengths against fitting orders: random certified instances") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        int a = 1 + static_cast<int>(rng() % 2);
        int b = 1 + static_cast<int>(rng() % 2);
        int expected_q = 0, expected_coker = 0;
        Mat<Fp> alpha0(a + b, a, fzero());
        for (int i = 0; i < a; ++i) {
            int e = static_cast<int>(rng() % 3);
            expected_q += e;
            alpha0.at(i, i) = fmono(1 + static_cast<long>(rng() % 4), e);
        }
        Mat<Fp> beta0(b, a + b, fzero());
        for (int i = 0; i < b; ++i) {
            int e = static_cast<int>(rng() % 3);
            expected_coker += e;
            beta0.at(i, a + i) = fmono(1 + static_cast<long>(rng() % 4), e);
        }
        auto [p, pinv] = random_unimodular(rng, a + b);
        auto [w, w_inv] = random_unimodular(rng, a);
        auto [v, v_inv] = random_unimodular(rng, b);
        Mat<Fp> alpha = p * alpha0 * w;
        Mat<Fp> beta = v * beta0 * pinv;
        auto rep = series::lemma33_check(alpha, beta, a, b);
        CHECK(rep.dim_Q == expected_q);
        CHECK(rep.fitt_Q == Valuation::exact(expected_q));
        CHECK(rep.dim_coker_beta == expected_coker);
        CHECK(rep.fitt_coker_beta == Valuation::exact(expected_coker));
    }
}

TEST_CASE("lemma33 rejects non-complexes") {
    Mat<Rat> alpha(2, 1, qzero());
    alpha.at(0, 0) = qmono(1, 0);
    Mat<Rat> beta(1, 2, qzero());
    beta.at(0, 0) = qmono(1, 0);  // beta * alpha = 1 != 0
    try {
        series::lemma33_check(alpha, beta, 1, 1);
        FAIL("expected not_a_complex");
    } catch (const error& e) {
        CHECK(e.kind() == errc::not_a_complex);
    }
}

TEST_CASE("euler valuation") {
    // [R --t^2--> R] in degrees (-1, 0): the cokernel length counts positively.
    Mat<Rat> t2(1, 1, qzero());
    t2.at(0, 0) = qmono(1, 2);
    CHECK(series::euler_valuation<Rat>({t2}, -1) == 2);

    // [R --t--> R^2 --(0, t)--> R]: lengths 0, 1, 1 alternate to zero.
    Mat<Rat> alpha(2, 1, qzero());
    alpha.at(0, 0) = qmono(1, 1);
    Mat<Rat> beta(1, 2, qzero());
    beta.at(0, 1) = qmono(1, 1);
    CHECK(series::euler_valuation<Rat>({alpha, beta}, -1) == 0);

    CHECK(series::euler_valuation<Rat>({}, -1) == 0);  // empty complex
}

TEST_CASE("euler valuation rejects free cohomology") {
    Mat<Rat> tall(2, 1, qzero());
    tall.at(0, 0) = qmono(1, 1);
    try {
        series::euler_valuation<Rat>({tall}, -1);  // coker has a free summand
        FAIL("expected not_torsion");
    } catch (const error& e) {
        CHECK(e.kind() == errc::not_torsion);
    }
}

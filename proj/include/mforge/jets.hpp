#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mforge/motivic.hpp"

namespace mforge::jets {

// Enumeration guards: explicit limits, never silent truncation.
constexpr std::uint64_t kBruteForceMax = 10'000'000;     // full-orbit path
constexpr std::uint64_t kRowReduceMax = 100'000'000;     // per-matrix decision path
constexpr int kMaxLevel = 7;

/// Truncated polynomial ring F_q[t]/(t^{n+1}); elements carry their
/// coefficients inline so enumeration never allocates.
struct JetRing {
    std::int64_t q = 2;
    int n = 0;

    JetRing(std::int64_t q_, int n_);
    int digits() const { return n + 1; }
};

using JetElem = std::array<std::uint8_t, kMaxLevel + 1>;

struct JetMatrix {
    int r = 0;
    std::array<JetElem, 16> e{};  // row-major, r <= 4

    JetElem& at(int i, int j) { return e[static_cast<size_t>(i * r + j)]; }
    const JetElem& at(int i, int j) const { return e[static_cast<size_t>(i * r + j)]; }
    bool operator==(const JetMatrix& o) const;
};

JetElem jet_zero();
JetElem jet_one(const JetRing& ring);
JetElem jet_monomial(const JetRing& ring, std::uint8_t coeff, int power);
JetElem jet_add(const JetRing& ring, const JetElem& a, const JetElem& b);
JetElem jet_sub(const JetRing& ring, const JetElem& a, const JetElem& b);
JetElem jet_mul(const JetRing& ring, const JetElem& a, const JetElem& b);
/// Smallest power with nonzero coefficient, or n+1 for the zero element.
int jet_val(const JetRing& ring, const JetElem& a);
bool jet_is_unit(const JetRing& ring, const JetElem& a);
JetElem jet_inv_unit(const JetRing& ring, const JetElem& a);

JetMatrix mat_mul(const JetRing& ring, const JetMatrix& a, const JetMatrix& b);
JetElem mat_det(const JetRing& ring, const JetMatrix& a);

/// The ambient space of r x r level-n jet matrices over F_q, with a
/// mixed-radix bijection onto [0, q^{(n+1) r^2}).
struct JetSpace {
    JetRing ring;
    int r;

    JetSpace(int r_, int n_, std::int64_t q_);

    mpz_class size() const;
    std::uint64_t size_u64() const;  // requires size() within the row-reduce guard
    std::uint64_t encode(const JetMatrix& a) const;
    JetMatrix decode(std::uint64_t idx) const;
};

/// Diagonal cylinder core diag(u t^{v[0]}, t^{v[1]}, ..., t^{v[r-1]}) with
/// u a unit; the cylinder is its orbit under the level-n determinant-one
/// jet group acting on the left.
struct CylinderPattern {
    std::vector<int> v;

    static CylinderPattern valuation_one(int r) {
        CylinderPattern p;
        p.v.assign(static_cast<size_t>(r), 0);
        p.v[0] = 1;
        return p;
    }
};

bool in_core_set(const JetSpace& space, const JetMatrix& a, const CylinderPattern& pat);

/// #SL_r(F_q) * q^{n (r^2 - 1)} by the closed formula.
mpz_class group_order(int r, int n, std::int64_t q);
/// Same number by sweeping the ambient space for det = 1 (guarded oracle).
std::uint64_t group_order_exhaustive(int r, int n, std::int64_t q);

/// All det-1 jet matrices, materialized.  Guarded by kBruteForceMax.
std::vector<JetMatrix> enumerate_group(const JetSpace& space);

enum class Method { brute, rowreduce, both };

/// Cylinder membership.  The brute path searches the group orbit directly;
/// the row-reduction path divides each column by its required t-power and
/// runs unit-pivot elimination over the local jet ring.  The two agree
/// everywhere both run.
bool membership(const JetSpace& space, const JetMatrix& a, const CylinderPattern& pat, Method method);

/// Sound fast path for the valuation-one cylinder, mirroring the diagonal
/// valuation pattern used in the transitivity argument: entries (1,1) of
/// valuation 1, (i,i) of valuation 0, the rest of valuation >= 2.  Only ever
/// used to short-circuit a positive answer.
bool prefilter_valuation_one(const JetSpace& space, const JetMatrix& a);

struct GroupoidCount {
    mpz_class numerator;    // points of the cylinder preimage upstairs
    mpz_class denominator;  // order of the level-n jet group
    mpq_class value;        // groupoid cardinality, in lowest terms
};

GroupoidCount groupoid_count(int r, int n, std::int64_t q, Method method = Method::rowreduce,
                             int workers = 1);
GroupoidCount groupoid_count_pattern(int r, int n, std::int64_t q, const CylinderPattern& pat,
                                     Method method, int workers = 1);

/// Order of the stabilizer of diag(t, 1, ..., 1) in the level-n jet group,
/// by exhaustive sweep (guarded).
std::uint64_t stabilizer_order(int r, int n, std::int64_t q);

/// Number of level-n jets of the affine line with t-order exactly v,
/// counted directly.
std::uint64_t base_cylinder_count(int n, std::int64_t q, int v);

/// e(level) |-> e(level) * L^{-(level+1) dim}; requires at least two
/// consecutive levels and identical results across them (stabilization).
motivic::MotivicElement measure_from_level(
    const std::vector<std::pair<int, motivic::MotivicElement>>& e_by_level, int dim);

struct NumericCheck {
    std::string what;
    int r = 0;
    int n = 0;
    std::int64_t q = 0;
    std::string value;
    std::string expected;
    bool match = false;
};

struct CovReport {
    std::string case_name;
    int r = 0;
    motivic::MotivicElement mu_gor_base;
    motivic::MotivicElement mu_cover;
    int ord_on_cylinder = 0;
    mpq_class shift;
    mpq_class coefficient;
    mpq_class expected_coefficient;
    bool symbolic_pass = false;
    std::vector<NumericCheck> numeric;
    bool pass = false;
};

/// Recover the canonical-divisor coefficient of the built-in example from
/// the two cylinder measures, then cross-validate both measures at small
/// primes against jet counts where enumeration is feasible.
CovReport verify_change_of_variables_lemma83(int r);
CovReport verify_change_of_variables_example82();

}  // namespace mforge::jets

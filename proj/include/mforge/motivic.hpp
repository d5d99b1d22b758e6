#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mforge/common.hpp"

namespace mforge::motivic {

/// Element of the localized Grothendieck-ring fragment used throughout:
/// a Laurent polynomial in the Lefschetz class L with exponents in (1/m)Z
/// and arbitrary-precision integer coefficients.
///
/// Canonical form is maintained at all times: no zero coefficients are
/// stored and every exponent is a reduced rational whose denominator
/// divides the index m.  Equality is equality of term maps; the index is a
/// declared bound, not part of the value.
class MotivicElement {
  public:
    using terms_map = std::map<mpq_class, mpz_class>;

    MotivicElement() = default;
    explicit MotivicElement(long c) { add_term(0, mpz_class(c)); }
    explicit MotivicElement(const mpz_class& c) { add_term(0, c); }

    /// c * L^e
    static MotivicElement monomial(const mpz_class& c, const mpq_class& e);
    /// L^e
    static MotivicElement lefschetz_power(const mpq_class& e) { return monomial(1, e); }
    static MotivicElement lefschetz() { return lefschetz_power(1); }
    static MotivicElement zero() { return MotivicElement(); }
    static MotivicElement one() { return MotivicElement(1); }

    const terms_map& terms() const { return terms_; }
    int index() const { return index_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const MotivicElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const MotivicElement& o) const { return !(*this == o); }

    MotivicElement operator+(const MotivicElement& o) const;
    MotivicElement operator-(const MotivicElement& o) const;
    MotivicElement operator*(const MotivicElement& o) const;
    MotivicElement operator-() const;

    /// Nonnegative integer power.
    MotivicElement pow(unsigned k) const;

    /// Smallest exponent with nonzero coefficient.  Requires a nonzero element.
    mpq_class min_exponent() const;

    std::string str() const;

  private:
    void add_term(const mpq_class& e, const mpz_class& c);
    void absorb_denominator(const mpq_class& e);

    int index_ = 1;
    terms_map terms_;
};

/// Exact quotient q with q*b == a.  Throws errc::not_divisible when no
/// Laurent-polynomial quotient with integer coefficients exists.
MotivicElement exact_div(const MotivicElement& a, const MotivicElement& b);

/// Point-counting realization L -> q, q >= 2.  All exponents must be
/// integers; otherwise errc::fractional_exponent.
mpq_class evaluate_at(const MotivicElement& a, const mpz_class& q);

/// The unique rational s with lhs == L^s * rhs, when it exists
/// (errc::no_shift otherwise).  Both sides must be nonzero.
mpq_class solve_L_shift(const MotivicElement& lhs, const MotivicElement& rhs);

// Built-in classes.  e(A^n) = L^n, e(G_m) = L-1,
// e(GL_r) = prod_{i<r} (L^r - L^i), e(SL_r) = e(GL_r)/(L-1),
// e(L_n G) = e(G) * L^{n dim G} for G a smooth builtin group.
MotivicElement affine_space_class(unsigned n);
MotivicElement torus_class();
MotivicElement general_linear_class(unsigned r);
MotivicElement special_linear_class(unsigned r);

enum class builtin_group { special_linear, general_linear, torus };
MotivicElement jet_group_class(builtin_group g, unsigned r, unsigned n);

/// Named lookup used by the expression parser: "A", "Gm", "GL", "SL", "jet".
/// Throws errc::unknown_builtin for anything else.
MotivicElement class_of(const std::string& name, const std::vector<long>& params);

}  // namespace mforge::motivic

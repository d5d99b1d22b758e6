#include "mforge/motivic.hpp"

#include <numeric>
#include <sstream>

namespace mforge::motivic {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

void MotivicElement::absorb_denominator(const mpq_class& e) {
    mpz_class den = e.get_den();
    if (!den.fits_slong_p()) fail(errc::invalid_input, "exponent denominator too large");
    index_ = static_cast<int>(lcm_long(index_, den.get_si()));
}

void MotivicElement::add_term(const mpq_class& e, const mpz_class& c) {
    if (c == 0) return;
    absorb_denominator(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MotivicElement MotivicElement::monomial(const mpz_class& c, const mpq_class& e) {
    MotivicElement r;
    r.add_term(e, c);
    return r;
}

MotivicElement MotivicElement::operator+(const MotivicElement& o) const {
    MotivicElement r = *this;
    r.index_ = static_cast<int>(lcm_long(index_, o.index_));
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MotivicElement MotivicElement::operator-() const {
    MotivicElement r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MotivicElement MotivicElement::operator-(const MotivicElement& o) const { return *this + (-o); }

MotivicElement MotivicElement::operator*(const MotivicElement& o) const {
    MotivicElement r;
    r.index_ = static_cast<int>(lcm_long(index_, o.index_));
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

MotivicElement MotivicElement::pow(unsigned k) const {
    MotivicElement acc = one();
    MotivicElement base = *this;
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        base = base * base;
        k >>= 1u;
    }
    return acc;
}

mpq_class MotivicElement::min_exponent() const {
    if (terms_.empty()) fail(errc::invalid_input, "min_exponent of zero element");
    return terms_.begin()->first;
}

std::string MotivicElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest exponent first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const mpq_class& e = it->first;
        mpz_class c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        mpz_class ac = abs(c);
        bool show_coeff = (e == 0) || ac != 1;
        if (show_coeff) os << ac.get_str();
        if (e != 0) {
            if (show_coeff) os << "*";
            os << "L";
            if (e != 1) {
                if (e.get_den() == 1) {
                    os << "^" << e.get_num().get_str();
                } else {
                    os << "^(" << e.get_str() << ")";
                }
            }
        }
    }
    return os.str();
}

MotivicElement exact_div(const MotivicElement& a, const MotivicElement& b) {
    if (b.is_zero()) fail(errc::invalid_input, "division by zero element");
    if (a.is_zero()) return MotivicElement::zero();

    // Work in the variable u = L^{1/m}, m = lcm of the two indices, after
    // shifting both operands to ordinary polynomials with nonzero constant
    // term.  Division is carried out over Q; the quotient is accepted only
    // if the remainder vanishes and all coefficients are integers.
    long m = std::lcm(static_cast<long>(a.index()), static_cast<long>(b.index()));
    auto to_dense = [m](const MotivicElement& x, long& shift) {
        shift = mpq_class(x.min_exponent() * m).get_num().get_si();
        long top = shift;
        for (const auto& [e, c] : x.terms()) {
            mpq_class scaled = e * m;
            top = std::max(top, scaled.get_num().get_si());
        }
        std::vector<mpq_class> dense(static_cast<size_t>(top - shift) + 1, mpq_class(0));
        for (const auto& [e, c] : x.terms()) {
            mpq_class scaled = e * m;
            dense[static_cast<size_t>(scaled.get_num().get_si() - shift)] = mpq_class(c);
        }
        return dense;
    };

    long sa = 0, sb = 0;
    std::vector<mpq_class> A = to_dense(a, sa);
    std::vector<mpq_class> B = to_dense(b, sb);
    if (A.size() < B.size()) fail(errc::not_divisible, "degree of divisor exceeds dividend");

    std::vector<mpq_class> Q(A.size() - B.size() + 1, mpq_class(0));
    std::vector<mpq_class> R = A;
    const mpq_class& lead = B.back();
    for (size_t k = Q.size(); k-- > 0;) {
        mpq_class q = R[k + B.size() - 1] / lead;
        Q[k] = q;
        if (q == 0) continue;
        for (size_t j = 0; j < B.size(); ++j) R[k + j] -= q * B[j];
    }
    for (const mpq_class& r : R)
        if (r != 0) fail(errc::not_divisible, "nonzero remainder");

    MotivicElement result;
    for (size_t k = 0; k < Q.size(); ++k) {
        if (Q[k] == 0) continue;
        if (Q[k].get_den() != 1) fail(errc::not_divisible, "quotient has fractional coefficients");
        mpq_class e(static_cast<long>(k) + sa - sb, m);
        e.canonicalize();
        result = result + MotivicElement::monomial(Q[k].get_num(), e);
    }
    return result;
}

mpq_class evaluate_at(const MotivicElement& a, const mpz_class& q) {
    if (q < 2) fail(errc::invalid_input, "evaluation point must be >= 2");
    mpq_class acc(0);
    for (const auto& [e, c] : a.terms()) {
        if (e.get_den() != 1)
            fail(errc::fractional_exponent,
                 "realization undefined: exponent " + e.get_str() + " is not an integer");
        mpz_class k = e.get_num();
        mpz_class ak = abs(k);
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), ak.get_ui());
        if (k >= 0) {
            acc += mpq_class(c) * mpq_class(p);
        } else {
            acc += mpq_class(c) / mpq_class(p);
        }
    }
    acc.canonicalize();
    return acc;
}

mpq_class solve_L_shift(const MotivicElement& lhs, const MotivicElement& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) fail(errc::invalid_input, "solve_L_shift on zero element");
    mpq_class s = lhs.min_exponent() - rhs.min_exponent();
    if (lhs != MotivicElement::lefschetz_power(s) * rhs)
        fail(errc::no_shift, "quotient is not a pure power of L");
    return s;
}

MotivicElement affine_space_class(unsigned n) { return MotivicElement::lefschetz_power(n); }

MotivicElement torus_class() { return MotivicElement::lefschetz() - MotivicElement::one(); }

MotivicElement general_linear_class(unsigned r) {
    if (r < 1) fail(errc::invalid_input, "general_linear requires r >= 1");
    MotivicElement acc = MotivicElement::one();
    MotivicElement lr = MotivicElement::lefschetz_power(r);
    for (unsigned i = 0; i < r; ++i) acc = acc * (lr - MotivicElement::lefschetz_power(i));
    return acc;
}

MotivicElement special_linear_class(unsigned r) {
    return exact_div(general_linear_class(r), torus_class());
}

MotivicElement jet_group_class(builtin_group g, unsigned r, unsigned n) {
    MotivicElement base;
    unsigned dim = 0;
    switch (g) {
        case builtin_group::special_linear:
            base = special_linear_class(r);
            dim = r * r - 1;
            break;
        case builtin_group::general_linear:
            base = general_linear_class(r);
            dim = r * r;
            break;
        case builtin_group::torus:
            base = torus_class();
            dim = 1;
            break;
    }
    return base * MotivicElement::lefschetz_power(n * dim);
}

MotivicElement class_of(const std::string& name, const std::vector<long>& params) {
    auto want = [&](size_t k) {
        if (params.size() != k)
            fail(errc::unknown_builtin, "builtin '" + name + "' expects " + std::to_string(k) +
                                            " parameter(s), got " + std::to_string(params.size()));
    };
    auto positive = [&](long v) {
        if (v < 1) fail(errc::invalid_input, "builtin parameter must be >= 1");
        return static_cast<unsigned>(v);
    };
    if (name == "A" || name == "affine_space") {
        want(1);
        if (params[0] < 0) fail(errc::invalid_input, "affine_space needs n >= 0");
        return affine_space_class(static_cast<unsigned>(params[0]));
    }
    if (name == "Gm" || name == "torus") {
        want(0);
        return torus_class();
    }
    if (name == "GL" || name == "general_linear") {
        want(1);
        return general_linear_class(positive(params[0]));
    }
    if (name == "SL" || name == "special_linear") {
        want(1);
        return special_linear_class(positive(params[0]));
    }
    fail(errc::unknown_builtin, "unknown builtin class '" + name + "'");
}

}  // namespace mforge::motivic

#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "mforge/series.hpp"

namespace mforge::poly {

/// Multivariate polynomial over Q in variables x0, x1, ...; just enough to
/// express defining equations of hypersurfaces and ideal generators, and to
/// evaluate them along arcs.
class Poly {
  public:
    using expvec = std::vector<unsigned>;

    Poly() = default;

    static Poly constant(const mpq_class& c) {
        Poly p;
        p.add({}, c);
        return p;
    }

    static Poly variable(unsigned k) {
        Poly p;
        expvec e(k + 1, 0);
        e[k] = 1;
        p.add(e, 1);
        return p;
    }

    /// Grammar: sum := ['-'] prod (('+'|'-') prod)*, prod := pow ('*' pow)*,
    /// pow := atom ('^' digits)?, atom := digits | x<k> | '(' sum ')'.
    static Poly parse(const std::string& text);

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.terms_) r.add(e, c);
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                expvec e(std::max(ea.size(), eb.size()), 0);
                for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
                for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
                r.add(e, ca * cb);
            }
        return r;
    }

    Poly pow(unsigned k) const {
        Poly acc = constant(1);
        Poly base = *this;
        while (k) {
            if (k & 1u) acc = acc * base;
            base = base * base;
            k >>= 1u;
        }
        return acc;
    }

    Poly derivative(unsigned var) const {
        Poly r;
        for (const auto& [e, c] : terms_) {
            if (var >= e.size() || e[var] == 0) continue;
            expvec d = e;
            --d[var];
            r.add(d, c * static_cast<long>(e[var]));
        }
        return r;
    }

    size_t num_vars() const {
        size_t n = 0;
        for (const auto& [e, c] : terms_) n = std::max(n, e.size());
        return n;
    }

    bool is_zero() const { return terms_.empty(); }

    template <class K>
    series::Series<K> evaluate(const std::vector<series::Series<K>>& xs) const {
        if (xs.empty()) fail(errc::invalid_input, "no coordinates supplied");
        if (num_vars() > xs.size()) fail(errc::invalid_input, "polynomial uses more variables than arc supplies");
        int prec = xs.front().precision();
        series::Series<K> acc = series::Series<K>::zeros(prec, xs.front().field_zero());
        for (const auto& [e, c] : terms_) {
            series::Series<K> term =
                series::Series<K>::monomial(coeff_in<K>(c, xs.front().field_zero()), 0, prec);
            for (size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) term = term * xs[i];
            acc = acc + term;
        }
        return acc;
    }

  private:
    void add(expvec e, const mpq_class& c) {
        if (c == 0) return;
        while (!e.empty() && e.back() == 0) e.pop_back();
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    template <class K>
    static K coeff_in(const mpq_class& c, const K& zero);

    std::map<expvec, mpq_class> terms_;
};

template <>
inline series::Rat Poly::coeff_in<series::Rat>(const mpq_class& c, const series::Rat&) {
    return series::Rat(c);
}

template <>
inline series::Fp Poly::coeff_in<series::Fp>(const mpq_class& c, const series::Fp& zero) {
    std::int64_t p = zero.modulus();
    series::Fp num(mpz_class(c.get_num() % p).get_si(), p);
    series::Fp den(mpz_class(c.get_den() % p).get_si(), p);
    if (series::is_zero(den)) fail(errc::invalid_input, "coefficient denominator vanishes in F_p");
    return num / den;
}

/// det of the generic r x r matrix, variables x0..x_{r^2-1} row-major.
Poly determinant_poly(int r);

}  // namespace mforge::poly

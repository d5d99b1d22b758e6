#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "mforge/common.hpp"

namespace mforge::divisor {

/// Formal Q-linear combination of labeled prime divisors.  Zero coefficients
/// are never stored, so equality of term maps is equality of divisors.
class DivisorSum {
  public:
    using terms_map = std::map<std::string, mpq_class>;

    DivisorSum() = default;

    static DivisorSum single(const std::string& label, const mpq_class& coeff) {
        DivisorSum d;
        d.add(label, coeff);
        return d;
    }

    void add(const std::string& label, const mpq_class& coeff) {
        if (coeff == 0) return;
        auto it = terms_.find(label);
        if (it == terms_.end()) {
            terms_.emplace(label, coeff);
            terms_[label].canonicalize();
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const terms_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpq_class coeff(const std::string& label) const {
        auto it = terms_.find(label);
        return it == terms_.end() ? mpq_class(0) : it->second;
    }

    DivisorSum operator+(const DivisorSum& o) const {
        DivisorSum r = *this;
        for (const auto& [l, c] : o.terms_) r.add(l, c);
        return r;
    }
    DivisorSum operator-() const {
        DivisorSum r;
        for (const auto& [l, c] : terms_) r.add(l, -c);
        return r;
    }
    DivisorSum operator-(const DivisorSum& o) const { return *this + (-o); }
    DivisorSum scaled(const mpq_class& a) const {
        DivisorSum r;
        for (const auto& [l, c] : terms_) r.add(l, a * c);
        return r;
    }

    bool operator==(const DivisorSum& o) const { return terms_ == o.terms_; }

    std::string str() const;

  private:
    terms_map terms_;
};

/// Pullback data for one map: source label -> (target label, multiplicity).
/// Every label appearing in a divisor being pulled back must be present.
using MultiplicityTable = std::map<std::string, std::vector<std::pair<std::string, mpq_class>>>;

/// Psi^* K per the declared multiplicity table.
DivisorSum pullback(const DivisorSum& k, const MultiplicityTable& table);

/// m K_{X/Z} = m K_{X/Y} + pi^*(m K_{Y/Z}).
DivisorSum compose(const DivisorSum& k_upper, const DivisorSum& k_lower, const MultiplicityTable& table);

/// K of a product is the sum of the factor pullbacks.
DivisorSum product(const std::vector<std::pair<DivisorSum, MultiplicityTable>>& factors);

}  // namespace mforge::divisor

#include "mforge/divisor.hpp"

#include <sstream>

namespace mforge::divisor {

std::string DivisorSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : terms_) {
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        mpq_class ac = abs(c);
        if (ac != 1) os << ac.get_str() << "*";
        os << l;
    }
    return os.str();
}

DivisorSum pullback(const DivisorSum& k, const MultiplicityTable& table) {
    DivisorSum out;
    for (const auto& [label, coeff] : k.terms()) {
        auto it = table.find(label);
        if (it == table.end()) fail(errc::unknown_label, "no pullback rule for divisor '" + label + "'");
        for (const auto& [target, mult] : it->second) out.add(target, coeff * mult);
    }
    return out;
}

DivisorSum compose(const DivisorSum& k_upper, const DivisorSum& k_lower, const MultiplicityTable& table) {
    return k_upper + pullback(k_lower, table);
}

DivisorSum product(const std::vector<std::pair<DivisorSum, MultiplicityTable>>& factors) {
    DivisorSum out;
    for (const auto& [k, table] : factors) out = out + pullback(k, table);
    return out;
}

}  // namespace mforge::divisor

#pragma once

#include <stdexcept>
#include <string>

namespace mforge {

// Every failure mode the library reports deliberately.  CLI maps these to
// exit codes; tests match on the kind rather than the message text.
enum class errc {
    not_divisible,
    unknown_builtin,
    fractional_exponent,
    no_shift,
    insufficient_precision,
    not_a_complex,
    not_torsion,
    unsupported_family,
    generic_point_violation,
    zero_component_order,
    not_log_terminal,
    certificate_failed,
    not_stabilized,
    too_large,
    parse_error,
    unknown_label,
    invalid_input,
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

  private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

// t-adic order of a truncated quantity.  Exact(v) means the order is known to
// be v; at_least(N) means every stored coefficient below t^N vanishes.
struct Valuation {
    int value = 0;
    bool is_exact = true;

    static Valuation exact(int v) { return {v, true}; }
    static Valuation at_least(int n) { return {n, false}; }

    bool operator==(const Valuation& o) const = default;

    // Minimum of two orders, staying honest about what is knowable: an exact
    // candidate survives only if every inexact bound lies above it.
    static Valuation min(const Valuation& a, const Valuation& b) {
        if (a.is_exact && b.is_exact) return exact(std::min(a.value, b.value));
        if (a.is_exact) return a.value < b.value ? a : at_least(b.value);
        if (b.is_exact) return b.value < a.value ? b : at_least(a.value);
        return at_least(std::min(a.value, b.value));
    }

    std::string str() const {
        return is_exact ? std::to_string(value) : ">=" + std::to_string(value);
    }
};

}  // namespace mforge

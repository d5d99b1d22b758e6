#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "mforge/common.hpp"

namespace mforge::series {

/// Prime-field scalar with runtime modulus.  p is restricted to small primes
/// (p <= 97): large enough for all counting oracles, small enough that
/// int64 products never overflow.
class Fp {
  public:
    Fp() = default;
    Fp(std::int64_t v, std::int64_t p) : p_(p) { v_ = ((v % p) + p) % p; }

    std::int64_t value() const { return v_; }
    std::int64_t modulus() const { return p_; }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }

    Fp operator+(const Fp& o) const { return Fp(v_ + o.v_, check(o)); }
    Fp operator-(const Fp& o) const { return Fp(v_ - o.v_, check(o)); }
    Fp operator*(const Fp& o) const { return Fp(v_ * o.v_, check(o)); }
    Fp operator-() const { return Fp(-v_, p_); }

    Fp inverse() const {
        if (v_ == 0) fail(errc::invalid_input, "inverse of zero in F_p");
        // Extended Euclid.
        std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        return Fp(x0, p_);
    }

    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

  private:
    std::int64_t check(const Fp& o) const {
        if (p_ != o.p_) fail(errc::invalid_input, "mixed prime fields");
        return p_;
    }

    std::int64_t v_ = 0;
    std::int64_t p_ = 2;
};

inline bool is_zero(const Fp& x) { return x.value() == 0; }
inline bool is_prime64(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Exact rational scalar; the characteristic-zero base field.
class Rat {
  public:
    Rat() = default;
    Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    Rat(long v) : v_(v) {}

    const mpq_class& value() const { return v_; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
    Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
    Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
    Rat operator-() const { return Rat(-v_); }
    Rat inverse() const {
        if (v_ == 0) fail(errc::invalid_input, "inverse of zero rational");
        return Rat(1 / v_);
    }
    Rat operator/(const Rat& o) const { return *this * o.inverse(); }

  private:
    mpq_class v_ = 0;
};

inline bool is_zero(const Rat& x) { return x.value() == 0; }

}  // namespace mforge::series

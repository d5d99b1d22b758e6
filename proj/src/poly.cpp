#include "mforge/poly.hpp"

namespace mforge::poly {

namespace {

class PolyParser {
  public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    Poly run() {
        Poly p = sum();
        skip_ws();
        if (pos_ < s_.size()) err(pos_, "trailing input");
        return p;
    }

  private:
    [[noreturn]] void err(size_t at, const std::string& msg) {
        fail(errc::parse_error, "polynomial parse error at offset " + std::to_string(at) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly sum() {
        bool neg = eat('-');
        Poly p = prod();
        if (neg) p = -p;
        while (true) {
            if (eat('+')) {
                p = p + prod();
            } else if (eat('-')) {
                p = p - prod();
            } else {
                return p;
            }
        }
    }

    Poly prod() {
        Poly p = powed();
        while (true) {
            skip_ws();
            if (eat('*')) {
                p = p * powed();
            } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(')) {
                p = p * powed();  // implicit multiplication, e.g. "2x0" or "3(x1+1)"
            } else {
                return p;
            }
        }
    }

    Poly powed() {
        Poly base = atom();
        if (!eat('^')) return base;
        return base.pow(static_cast<unsigned>(digits()));
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= s_.size()) err(pos_, "expected term");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = sum();
            if (!eat(')')) err(pos_, "expected ')'");
            return p;
        }
        if (c == 'x') {
            ++pos_;
            return Poly::variable(static_cast<unsigned>(digits()));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(mpq_class(digits()));
        err(pos_, std::string("unexpected character '") + c + "'");
    }

    long digits() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            err(pos_, "expected digits");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1'000'000L) err(pos_, "number too large");
            ++pos_;
        }
        return v;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const std::string& text) { return PolyParser(text).run(); }

Poly determinant_poly(int r) {
    if (r < 1 || r > 4) fail(errc::invalid_input, "determinant_poly supports 1 <= r <= 4");
    // Leibniz expansion over permutations.
    std::vector<int> perm(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) perm[static_cast<size_t>(i)] = i;
    Poly acc;
    do {
        int sign = 1;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) sign = -sign;
        Poly term = Poly::constant(sign);
        for (int i = 0; i < r; ++i)
            term = term * Poly::variable(static_cast<unsigned>(i * r + perm[static_cast<size_t>(i)]));
        acc = acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace mforge::poly

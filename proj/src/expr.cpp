#include "mforge/expr.hpp"

#include <cctype>

namespace mforge::motivic {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    MotivicElement run() {
        MotivicElement v = expr();
        skip_ws();
        if (pos_ < s_.size()) err(pos_, "trailing input");
        return v;
    }

  private:
    [[noreturn]] void err(size_t at, const std::string& msg) {
        fail(errc::parse_error, "parse error at offset " + std::to_string(at) + ": " + msg);
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

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MotivicElement expr() {
        // Accept a leading sign so canonical output round-trips.
        bool lead_neg = eat('-');
        MotivicElement v = term();
        if (lead_neg) v = -v;
        while (true) {
            if (eat('+')) {
                v = v + term();
            } else if (eat('-')) {
                v = v - term();
            } else {
                return v;
            }
        }
    }

    MotivicElement term() {
        MotivicElement v = factor();
        while (eat('*')) v = v * factor();
        return v;
    }

    MotivicElement factor() {
        MotivicElement base = atom();
        if (!eat('^')) return base;
        size_t at = pos_;
        mpq_class e = rational();
        if (e.get_den() == 1 && e >= 0) return base.pow(static_cast<unsigned>(e.get_num().get_ui()));
        // Negative or fractional powers only make sense for a single monomial.
        if (base.terms().size() != 1 || base.terms().begin()->second != 1)
            err(at, "non-integer power of a non-monomial");
        return MotivicElement::lefschetz_power(base.terms().begin()->first * e);
    }

    MotivicElement atom() {
        skip_ws();
        if (pos_ >= s_.size()) err(pos_, "expected atom");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MotivicElement v = expr();
            if (!eat(')')) err(pos_, "expected ')'");
            return v;
        }
        if (c == 'L') {
            ++pos_;
            return MotivicElement::lefschetz();
        }
        if (c == 'e') {
            return builtin();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return MotivicElement(digits());
        }
        err(pos_, std::string("unexpected character '") + c + "'");
    }

    MotivicElement builtin() {
        ++pos_;  // 'e'
        if (!eat('(')) err(pos_, "expected '(' after 'e'");
        skip_ws();
        size_t name_at = pos_;
        std::string name = identifier();
        if (name.empty()) err(name_at, "expected builtin name");
        std::vector<long> args;
        while (true) {
            skip_ws();
            if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) {
                args.push_back(integer_literal());
            } else {
                break;
            }
        }
        if (!eat(')')) err(pos_, "expected ')'");
        if (name == "jetSL" || name == "jetGL" || name == "jetGm") {
            builtin_group g = name == "jetSL"   ? builtin_group::special_linear
                              : name == "jetGL" ? builtin_group::general_linear
                                                : builtin_group::torus;
            size_t need = (g == builtin_group::torus) ? 1 : 2;
            if (args.size() != need) err(name_at, "wrong number of jet-group parameters");
            unsigned r = (g == builtin_group::torus) ? 1 : check_unsigned(args[0], name_at);
            unsigned n = check_unsigned(args.back(), name_at);
            return jet_group_class(g, r, n);
        }
        return class_of(name, args);
    }

    unsigned check_unsigned(long v, size_t at) {
        if (v < 0) err(at, "parameter must be nonnegative");
        return static_cast<unsigned>(v);
    }

    std::string identifier() {
        std::string out;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) out += s_[pos_++];
        return out;
    }

    mpz_class digits() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            err(pos_, "expected digits");
        std::string lit;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) lit += s_[pos_++];
        return mpz_class(lit);
    }

    long integer_literal() {
        skip_ws();
        size_t at = pos_;
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        mpz_class v = digits();
        if (!v.fits_slong_p()) err(at, "integer literal too large");
        return neg ? -v.get_si() : v.get_si();
    }

    // rational := ['-'] digits ['/' digits] | '(' rational ')'
    mpq_class rational() {
        skip_ws();
        if (eat('(')) {
            mpq_class inner = rational();
            if (!eat(')')) err(pos_, "expected ')' in exponent");
            return inner;
        }
        long num = integer_literal();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            size_t slash_at = pos_;
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                err(slash_at, "expected denominator after '/'");
            long den = integer_literal();
            if (den == 0) err(slash_at, "zero denominator");
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

MotivicElement parse_expression(const std::string& text) { return Parser(text).run(); }

}  // namespace mforge::motivic

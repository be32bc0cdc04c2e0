#include "belyi/parse.hpp"

#include <cctype>

namespace belyi {

namespace {

class Parser {
public:
    Parser(const std::string& text, const VarList& vars, const std::map<std::string, QuadExt>& bindings)
        : s_(text), vars_(vars), bindings_(bindings) {}

    QuadPoly run() {
        QuadPoly p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    QuadPoly constant(const QuadExt& v) const { return QuadPoly(vars_, v); }

    QuadPoly expr() {
        QuadPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }
    QuadPoly term() {
        QuadPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                size_t at = pos_;
                QuadPoly d = unary();
                if (!d.is_constant()) throw ParseError("division by a non-constant", at);
                if (d.is_zero_poly()) throw ParseError("division by zero", at);
                acc = acc.scaled(QuadExt(1) / d.constant_value());
            } else {
                return acc;
            }
        }
    }
    QuadPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    QuadPoly power() {
        QuadPoly base = atom();
        if (accept('^')) {
            skip();
            size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected an exponent", at);
            if (digits.size() > 4) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }
    std::string read_digits() {
        std::string d;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
        return d;
    }
    QuadPoly atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) return constant(QuadExt(Rational(Integer(read_digits()))));
        if (ch == '(') {
            ++pos_;
            QuadPoly p = expr();
            expect(')');
            return p;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t at = pos_;
            std::string name;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) name += s_[pos_++];
            if (name == "sqrt") {
                expect('(');
                skip();
                size_t dat = pos_;
                std::string digits = read_digits();
                if (digits.empty()) throw ParseError("sqrt expects a positive integer", dat);
                expect(')');
                long d = std::stol(digits);
                if (auto r = rational_sqrt_exact(Rational(d))) return constant(QuadExt(*r));
                if (!is_squarefree(d)) throw ParseError("sqrt argument must be square-free or a square", dat);
                return constant(QuadExt::sqrt_of(d));
            }
            if (auto it = bindings_.find(name); it != bindings_.end()) return constant(it->second);
            if (vars_)
                for (const auto& v : *vars_)
                    if (v == name) return QuadPoly::variable(vars_, name);
            throw ParseError("unknown variable '" + name + "'", at);
        }
        throw ParseError("unexpected '" + std::string(1, ch) + "'", pos_);
    }

    const std::string& s_;
    VarList vars_;
    const std::map<std::string, QuadExt>& bindings_;
    size_t pos_ = 0;
};

}  // namespace

QuadPoly parse_poly(const std::string& text, const VarList& vars, const std::map<std::string, QuadExt>& bindings) {
    try {
        return Parser(text, vars, bindings).run();
    } catch (const ArithmeticError& e) {
        throw ParseError(e.what(), 0);
    }
}

std::optional<QPoly> to_rational_poly(const QuadPoly& p) {
    QPoly::Terms t;
    for (const auto& [e, c] : p.terms()) {
        if (!c.is_rational()) return std::nullopt;
        t.emplace(e, c.rat_part());
    }
    return QPoly(p.vars(), std::move(t));
}

QuadPoly to_quad_poly(const QPoly& p) {
    return p.map_coefficients([](const Rational& r) { return QuadExt(r); });
}

QPoly parse_rational_poly(const std::string& text, const VarList& vars) {
    auto q = to_rational_poly(parse_poly(text, vars));
    if (!q) throw ParseError("irrational coefficient where a rational polynomial was expected", 0);
    return *q;
}

}  // namespace belyi

#pragma once

// Quotients of polynomials: RatFunc<F> over F[x] (kept reduced, monic
// denominator) and RationalFunction over Q[vars] (reduced by gcd).

#include <optional>
#include <string>
#include <utility>

#include "belyi/multipoly.hpp"
#include "belyi/upoly.hpp"

namespace belyi {

template <Field F>
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(UPoly<F> num) : num_(std::move(num)) {  // NOLINT(google-explicit-constructor)
        if (!num_.is_zero_poly()) den_ = UPoly<F>::constant(one_like(num_.lc()));
    }
    RatFunc(UPoly<F> num, UPoly<F> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    static RatFunc constant(const F& c) { return RatFunc(UPoly<F>::constant(c)); }

    const UPoly<F>& num() const { return num_; }
    /// Monic; the constant 1 for polynomials (and for zero).
    UPoly<F> den() const { return den_.is_zero_poly() ? UPoly<F>::constant(F(1)) : den_; }
    bool is_zero_rf() const { return num_.is_zero_poly(); }
    bool is_polynomial() const { return den_.degree() <= 0; }
    /// deg num - deg den (the order of the pole at infinity in x).
    int degree() const { return num_.degree() - den().degree(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_rf()) return b;
        if (b.is_zero_rf()) return a;
        UPoly<F> da = a.den(), db = b.den();
        UPoly<F> g = gcd(da, db);
        if (g.degree() <= 0) return RatFunc(a.num_ * db + b.num_ * da, da * db);
        UPoly<F> ca = *exact_divide(da, g), cb = *exact_divide(db, g);
        // only g can still share factors with the new numerator
        return RatFunc(a.num_ * cb + b.num_ * ca, ca * db);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_rf() || b.is_zero_rf()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
        auto cancel = [](const UPoly<F>& n, const UPoly<F>& d) {
            UPoly<F> g = gcd(n, d);
            if (g.degree() <= 0) return std::pair{n, d};
            return std::pair{*exact_divide(n, g), *exact_divide(d, g)};
        };
        auto [n1, d2] = cancel(a.num_, b.den());
        auto [n2, d1] = cancel(b.num_, a.den());
        RatFunc r;
        r.num_ = n1 * n2;
        r.den_ = d1 * d2;
        r.normalize();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero_rf()) throw ArithmeticError("rational function division by zero");
        if (a.is_zero_rf()) return {};
        RatFunc inv;
        inv.num_ = b.den();
        inv.den_ = b.num_;
        inv.normalize();
        return a * inv;
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den() == b.num_ * a.den(); }

    RatFunc derivative() const {
        if (is_zero_rf()) return {};
        UPoly<F> d = den();
        return RatFunc(num_.derivative() * d - num_ * d.derivative(), d * d);
    }

    /// Exact square root, if this is the square of a rational function.
    std::optional<RatFunc> sqrt() const {
        if (is_zero_rf()) return *this;
        auto n = poly_sqrt(num_);
        auto d = poly_sqrt(den());
        if (!n || !d) return std::nullopt;
        return RatFunc(*n, *d);
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_polynomial()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den().to_string(var) + ")";
    }

private:
    void reduce() {
        if (den_.is_zero_poly()) throw ArithmeticError("rational function with zero denominator");
        if (num_.is_zero_poly()) {
            den_ = UPoly<F>{};
            return;
        }
        UPoly<F> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = *exact_divide(num_, g);
            den_ = *exact_divide(den_, g);
        }
        normalize();
    }
    /// Makes the denominator monic (num and den already coprime).
    void normalize() {
        if (num_.is_zero_poly()) {
            den_ = UPoly<F>{};
            return;
        }
        F inv = one_like(den_.lc()) / den_.lc();
        num_ = inv * num_;
        den_ = inv * den_;
    }

    UPoly<F> num_;
    UPoly<F> den_;  // empty for the zero function
};

template <Field F>
bool is_zero(const RatFunc<F>& r) {
    return r.is_zero_rf();
}

/// Quotient of multivariate polynomials over Q, reduced by gcd with an
/// integer-primitive denominator of positive leading coefficient.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(int v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(QPoly num) : num_(std::move(num)), den_(QPoly(num_.vars(), Rational(1))) {}  // NOLINT
    RationalFunction(QPoly num, QPoly den, bool reduce_now = true);

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero_rf() const { return num_.is_zero_poly(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const { return RationalFunction(-num_, den_, false); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    /// Equality by cross-multiplication.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    RationalFunction divide_by_int(long n) const { return RationalFunction(num_.divide_by_int(n), den_, false); }
    std::string to_string() const;

private:
    void reduce();
    QPoly num_;
    QPoly den_;
};

inline bool is_zero(const RationalFunction& r) { return r.is_zero_rf(); }
inline std::string to_string(const RationalFunction& r) { return r.to_string(); }
inline std::optional<RationalFunction> invert_unit(const RationalFunction& r) {
    if (r.is_zero_rf()) return std::nullopt;
    return RationalFunction(1) / r;
}

}  // namespace belyi

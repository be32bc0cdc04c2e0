#pragma once

// Dense univariate polynomials over a coefficient ring. Field-only
// algorithms (division, gcd, square-free decomposition, exact square roots)
// are constrained on Field<F>.

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "belyi/ring.hpp"

namespace belyi {

template <class R>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<R> coeffs_low_to_high) : c_(std::move(coeffs_low_to_high)) { trim(); }
    UPoly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }
    static UPoly constant(R v) { return UPoly(std::vector<R>{std::move(v)}); }
    /// c * x^k
    static UPoly monomial(R c, int k) {
        std::vector<R> v(static_cast<size_t>(k) + 1, zero_like(c));
        v[static_cast<size_t>(k)] = std::move(c);
        return UPoly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero_poly() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    /// Coefficient of x^k; `like` supplies the zero for out-of-range k.
    R coeff(int k, const R& like) const {
        if (k < 0 || k > degree()) return zero_like(like);
        return c_[static_cast<size_t>(k)];
    }
    R coeff(int k) const {
        if (k < 0 || k > degree()) return c_.empty() ? R(0) : zero_like(c_.front());
        return c_[static_cast<size_t>(k)];
    }
    const R& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_like(o.c_.back()));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<R> r(a.c_.size() + b.c_.size() - 1, zero_like(a.c_.front()));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend UPoly operator*(const R& s, const UPoly& p) {
        UPoly r = p;
        for (auto& v : r.c_) v = s * v;
        r.trim();
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    UPoly pow(unsigned e) const {
        UPoly base = *this;
        UPoly r = UPoly::constant(c_.empty() ? R(1) : one_like(c_.front()));
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<R> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(from_int_like(c_[i], static_cast<long>(i)) * c_[i]);
        return UPoly(std::move(r));
    }

    /// Horner evaluation at a value of any ring T that accepts R coefficients
    /// through `embed`.
    template <class T, class Embed>
    T eval(const T& at, Embed embed) const {
        if (c_.empty()) return zero_like(at);
        T acc = embed(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * at + embed(c_[i]);
        return acc;
    }
    R operator()(const R& at) const {
        return eval(at, [](const R& v) { return v; });
    }

    /// p(q(x))
    UPoly compose(const UPoly& q) const {
        if (c_.empty()) return {};
        UPoly acc = UPoly::constant(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * q + UPoly::constant(c_[i]);
        return acc;
    }

    /// p(x + s)
    UPoly shift(const R& s) const { return compose(UPoly{s, one_like(s)}); }

    template <class Fn>
    auto map(Fn fn) const {
        using T = decltype(fn(std::declval<const R&>()));
        std::vector<T> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(fn(v));
        return UPoly<T>(std::move(out));
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

template <class R>
std::string UPoly<R>::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const R& v = c_[static_cast<size_t>(k)];
        if (is_zero(v)) continue;
        std::string cs = belyi::to_string(v);
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        if (compound) cs = "(" + cs + ")";
        std::string term;
        if (k == 0) {
            term = cs;
        } else {
            std::string mono = var + (k > 1 ? "^" + std::to_string(k) : "");
            if (cs == "1")
                term = mono;
            else if (cs == "-1")
                term = "-" + mono;
            else
                term = cs + "*" + mono;
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

template <class R>
std::string to_string(const UPoly<R>& p) {
    return p.to_string();
}

// --- field algorithms --------------------------------------------------------

template <Field F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
    if (b.is_zero_poly()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {UPoly<F>{}, a};
    std::vector<F> rem = a.coeffs();
    std::vector<F> quo(static_cast<size_t>(a.degree() - b.degree() + 1), zero_like(b.lc()));
    const F& lb = b.lc();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        F q = rem[static_cast<size_t>(k + b.degree())] / lb;
        if (is_zero(q)) continue;
        quo[static_cast<size_t>(k)] = q;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<size_t>(k + j)] = rem[static_cast<size_t>(k + j)] - q * b.coeffs()[static_cast<size_t>(j)];
    }
    rem.resize(static_cast<size_t>(b.degree()), zero_like(lb));
    return {UPoly<F>(std::move(quo)), UPoly<F>(std::move(rem))};
}

template <Field F>
UPoly<F> monic(const UPoly<F>& p) {
    if (p.is_zero_poly()) return p;
    F inv = one_like(p.lc()) / p.lc();
    return inv * p;
}

/// Monic gcd (zero if both inputs are zero).
template <Field F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero_poly()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Quotient if b divides a exactly.
template <Field F>
std::optional<UPoly<F>> exact_divide(const UPoly<F>& a, const UPoly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero_poly()) return std::nullopt;
    return q;
}

/// Inverse of a modulo m (a and m coprime).
template <Field F>
UPoly<F> inverse_mod(const UPoly<F>& a, const UPoly<F>& m) {
    UPoly<F> r0 = m, r1 = divmod(a, m).second;
    UPoly<F> s0, s1 = UPoly<F>::constant(one_like(m.lc()));
    while (!r1.is_zero_poly()) {
        auto [q, r] = divmod(r0, r1);
        UPoly<F> s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) throw std::domain_error("inverse_mod: not coprime");
    F inv = one_like(r0.lc()) / r0.lc();
    return divmod(inv * s0, m).second;
}

/// Yun's algorithm: returns factors s_1, s_2, ... (monic, pairwise coprime,
/// square-free) with monic(p) = prod s_i^i. Entry i-1 holds s_i; trailing
/// ones are trimmed.
template <Field F>
std::vector<UPoly<F>> squarefree_decomposition(const UPoly<F>& p) {
    if (p.degree() < 1) return {};
    std::vector<UPoly<F>> out;
    UPoly<F> a = monic(p);
    UPoly<F> b = a.derivative();
    UPoly<F> c = gcd(a, b);
    UPoly<F> w = *exact_divide(a, c);
    UPoly<F> y = *exact_divide(b, c);
    UPoly<F> z = y - w.derivative();
    while (w.degree() > 0) {
        UPoly<F> g = gcd(w, z);
        out.push_back(g);
        w = *exact_divide(w, g);
        y = *exact_divide(z, g);
        z = y - w.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

/// Exact square root of a polynomial over F, if p is a perfect square.
template <Field F>
std::optional<UPoly<F>> poly_sqrt(const UPoly<F>& p) {
    if (p.is_zero_poly()) return p;
    auto lc_root = try_sqrt(p.lc());
    if (!lc_root) return std::nullopt;
    if (p.degree() == 0) return UPoly<F>::constant(*lc_root);
    auto parts = squarefree_decomposition(p);
    UPoly<F> root = UPoly<F>::constant(*lc_root);
    for (size_t i = 0; i < parts.size(); ++i) {
        size_t mult = i + 1;
        if (parts[i].degree() <= 0) continue;
        if (mult % 2 != 0) return std::nullopt;
        root *= parts[i].pow(static_cast<unsigned>(mult / 2));
    }
    if (!(root * root == p)) return std::nullopt;
    return root;
}

}  // namespace belyi

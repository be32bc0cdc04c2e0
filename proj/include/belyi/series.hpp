#pragma once

// Truncated Laurent series c_v t^v + c_{v+1} t^{v+1} + ... + O(t^N) over a
// coefficient ring, and the expansion of y (y^2 = f(x)) at the places of a
// genus-one model.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "belyi/ring.hpp"
#include "belyi/upoly.hpp"

namespace belyi {

inline constexpr int kSeriesTermCap = 64;

/// Raised when a coefficient beyond the guaranteed truncation order is
/// requested, or an operation cannot keep any correct term.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class R>
class LaurentSeries {
public:
    LaurentSeries() = default;
    /// The zero series known up to O(t^order).
    static LaurentSeries zero(int order, const R& like) {
        LaurentSeries s;
        s.val_ = order;
        s.order_ = order;
        s.like_ = zero_like(like);
        return s;
    }
    /// sum_k coeffs[k] t^(val + k) + O(t^order).
    LaurentSeries(int val, std::vector<R> coeffs, int order, const R& like) : val_(val), order_(order), like_(zero_like(like)) {
        if (static_cast<int>(coeffs.size()) > order - val) coeffs.resize(static_cast<size_t>(std::max(0, order - val)), like_);
        c_ = std::move(coeffs);
        normalize();
    }
    /// A polynomial p(t) viewed as a series known to O(t^order).
    static LaurentSeries from_poly(const UPoly<R>& p, int order, const R& like) {
        return LaurentSeries(0, p.coeffs(), order, like);
    }
    static LaurentSeries monomial(const R& c, int k, int order) { return LaurentSeries(k, std::vector<R>{c}, order, c); }

    bool is_zero_series() const { return c_.empty(); }
    /// Lowest exponent with nonzero coefficient (== order() for a zero series).
    int valuation() const { return val_; }
    int order() const { return order_; }
    const R& like() const { return like_; }
    R leading() const {
        if (c_.empty()) throw PrecisionError("leading coefficient of a series that vanishes to its order");
        return c_.front();
    }

    R coefficient(int k) const {
        if (k >= order_) throw PrecisionError("coefficient t^" + std::to_string(k) + " beyond truncation order " + std::to_string(order_));
        if (k < val_ || k - val_ >= static_cast<int>(c_.size())) return like_;
        return c_[static_cast<size_t>(k - val_)];
    }

    LaurentSeries truncated(int order) const {
        LaurentSeries r = *this;
        r.order_ = std::min(order_, order);
        if (r.val_ > r.order_) r.val_ = r.order_;
        if (static_cast<int>(r.c_.size()) > r.order_ - r.val_) r.c_.resize(static_cast<size_t>(std::max(0, r.order_ - r.val_)), like_);
        r.normalize();
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }
    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        int order = std::min(a.val_ + b.order_, b.val_ + a.order_);
        int val = a.val_ + b.val_;
        if (a.c_.empty() || b.c_.empty()) return zero(std::max(order, std::min(a.order_, b.order_)), a.like_);
        size_t n = static_cast<size_t>(std::max(0, order - val));
        std::vector<R> r(n, a.like_);
        for (size_t i = 0; i < a.c_.size() && i < n; ++i) {
            if (is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size() && i + j < n; ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return LaurentSeries(val, std::move(r), order, a.like_);
    }
    LaurentSeries scaled(const R& s) const {
        LaurentSeries r = *this;
        for (auto& c : r.c_) c = s * c;
        r.normalize();
        return r;
    }
    /// Multiplication by t^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries r = *this;
        r.val_ += k;
        r.order_ += k;
        return r;
    }

    /// 1/s; the leading coefficient must be a unit of the ring.
    LaurentSeries inverse() const {
        if (c_.empty()) throw PrecisionError("inverse of a series with no known nonzero term");
        auto inv0 = invert_unit(c_.front());
        if (!inv0) throw ArithmeticError("series inverse: leading coefficient is not a unit");
        int n = order_ - val_;
        std::vector<R> r(static_cast<size_t>(n), like_);
        r[0] = *inv0;
        for (int k = 1; k < n; ++k) {
            R acc = like_;
            for (int i = 1; i <= k && i < static_cast<int>(c_.size()); ++i) acc = acc + c_[static_cast<size_t>(i)] * r[static_cast<size_t>(k - i)];
            r[static_cast<size_t>(k)] = -(acc * *inv0);
        }
        return LaurentSeries(-val_, std::move(r), -val_ + n, like_);
    }
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

    /// Formal derivative d/dt.
    LaurentSeries derivative() const {
        std::vector<R> r;
        for (size_t i = 0; i < c_.size(); ++i) r.push_back(from_int_like(like_, val_ + static_cast<int>(i)) * c_[i]);
        return LaurentSeries(val_ - 1, std::move(r), order_ - 1, like_);
    }

    const std::vector<R>& raw_coefficients() const { return c_; }

    std::string to_string(const std::string& var = "t") const;

private:
    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        int order = std::min(a.order_, b.order_);
        int val = std::min(a.val_, b.val_);
        if (val > order) val = order;
        std::vector<R> r(static_cast<size_t>(std::max(0, order - val)), a.like_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int k = a.val_ + static_cast<int>(i) - val;
            if (k < static_cast<int>(r.size())) r[static_cast<size_t>(k)] = a.c_[i];
        }
        for (size_t i = 0; i < b.c_.size(); ++i) {
            int k = b.val_ + static_cast<int>(i) - val;
            if (k < static_cast<int>(r.size()))
            {
                if (subtract)
                    r[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] - b.c_[i];
                else
                    r[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] + b.c_[i];
            }
        }
        return LaurentSeries(val, std::move(r), order, a.like_);
    }
    void normalize() {
        size_t lead = 0;
        while (lead < c_.size() && is_zero(c_[lead])) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<int>(lead);
        }
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
        if (c_.empty()) val_ = order_;
    }

    int val_ = 0;
    int order_ = 0;
    R like_{};
    std::vector<R> c_;
};

template <class R>
std::string LaurentSeries<R>::to_string(const std::string& var) const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (is_zero(c_[i])) continue;
        int k = val_ + static_cast<int>(i);
        std::string cs = belyi::to_string(c_[i]);
        if (cs.find_first_of("+- ", 1) != std::string::npos) cs = "(" + cs + ")";
        std::string term = k == 0 ? cs : cs + "*" + var + (k == 1 ? "" : "^" + std::to_string(k));
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    std::string tail = "O(" + var + (order_ == 1 ? "" : "^" + std::to_string(order_)) + ")";
    return out.empty() ? tail : out + " + " + tail;
}

/// Square root with leading coefficient `root0` (root0^2 must equal the
/// leading coefficient of s; 2*root0 must be a unit).
template <class R>
LaurentSeries<R> series_sqrt(const LaurentSeries<R>& s, const R& root0) {
    if (s.is_zero_series()) throw PrecisionError("series_sqrt: no nonzero term known");
    if (s.valuation() % 2 != 0) throw ArithmeticError("series_sqrt: odd valuation");
    if (!(root0 * root0 == s.leading())) throw ArithmeticError("series_sqrt: root0^2 differs from the leading coefficient");
    auto inv = invert_unit(root0);
    if (!inv) throw ArithmeticError("series_sqrt: leading root is not a unit");
    int n = s.order() - s.valuation();
    const auto& c = s.raw_coefficients();
    auto cf = [&](int i) { return i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : zero_like(root0); };
    std::vector<R> r(static_cast<size_t>(n), zero_like(root0));
    r[0] = root0;
    for (int k = 1; k < n; ++k) {
        R acc = cf(k);
        for (int i = 1; i < k; ++i) acc = acc - r[static_cast<size_t>(i)] * r[static_cast<size_t>(k - i)];
        r[static_cast<size_t>(k)] = divide_by_int(R(acc * *inv), 2);
    }
    int v = s.valuation() / 2;
    return LaurentSeries<R>(v, std::move(r), v + n, root0);
}

/// Square root whose leading coefficient is found inside the ring (`d` tags
/// the quadratic field when R is QuadExt).
template <class R>
LaurentSeries<R> series_sqrt(const LaurentSeries<R>& s, long d = 0) {
    if (s.is_zero_series()) throw PrecisionError("series_sqrt: no nonzero term known");
    auto root = sqrt_in_field(s.leading(), d);
    if (!root) throw ArithmeticError("series_sqrt: leading coefficient is not a square");
    return series_sqrt(s, *root);
}

template <class R>
R coefficient_of(const LaurentSeries<R>& s, int k) {
    return s.coefficient(k);
}

// --- places and the expansion of y ----------------------------------------------

enum class PlaceKind {
    Finite,          // (x0, y0) with y0 != 0, parameter t = x - x0
    InfinityPlus,    // quartic model, y ~ +sqrt(lc) x^2, parameter t = 1/x
    InfinityMinus,   // quartic model, y ~ -sqrt(lc) x^2, parameter t = 1/x
    InfinityRamified // cubic model, x = t^-2, y ~ +sqrt(lc) t^-3
};

template <class R>
struct Place {
    PlaceKind kind = PlaceKind::Finite;
    R x0{};
    R y0{};

    static Place finite(R x, R y) { return {PlaceKind::Finite, std::move(x), std::move(y)}; }
    static Place at_infinity(PlaceKind k, const R& like) { return {k, zero_like(like), zero_like(like)}; }
    bool is_infinite() const { return kind != PlaceKind::Finite; }
};

inline std::string place_kind_name(PlaceKind k) {
    switch (k) {
        case PlaceKind::Finite: return "finite";
        case PlaceKind::InfinityPlus: return "inf+";
        case PlaceKind::InfinityMinus: return "inf-";
        case PlaceKind::InfinityRamified: return "inf";
    }
    return "?";
}

/// x as a series in the local parameter of the place.
template <class R>
LaurentSeries<R> x_series(const Place<R>& p, int order, const R& like) {
    switch (p.kind) {
        case PlaceKind::Finite: return LaurentSeries<R>(0, {p.x0, one_like(like)}, order, like);
        case PlaceKind::InfinityPlus:
        case PlaceKind::InfinityMinus: return LaurentSeries<R>::monomial(one_like(like), -1, order);
        case PlaceKind::InfinityRamified: return LaurentSeries<R>::monomial(one_like(like), -2, order);
    }
    throw std::logic_error("bad place");
}

/// dx/dt in the local parameter.
template <class R>
LaurentSeries<R> dx_series(const Place<R>& p, int order, const R& like) {
    switch (p.kind) {
        case PlaceKind::Finite: return LaurentSeries<R>::monomial(one_like(like), 0, order);
        case PlaceKind::InfinityPlus:
        case PlaceKind::InfinityMinus: return LaurentSeries<R>::monomial(-one_like(like), -2, order);
        case PlaceKind::InfinityRamified: return LaurentSeries<R>::monomial(from_int_like(like, -2), -3, order);
    }
    throw std::logic_error("bad place");
}

/// Rational function num/den of x expanded at the place, to O(t^order).
template <class R>
LaurentSeries<R> expand_rational(const UPoly<R>& num, const UPoly<R>& den, const Place<R>& p, int order) {
    if (den.is_zero_poly()) throw ArithmeticError("expand_rational: zero denominator");
    const R& like = den.lc();
    if (num.is_zero_poly()) return LaurentSeries<R>::zero(order, like);
    if (p.kind == PlaceKind::Finite) {
        UPoly<R> n = num.shift(p.x0), d = den.shift(p.x0);
        int vd = 0;
        while (is_zero(d.coeff(vd, like))) ++vd;
        // den = t^vd * dd(t); expand n / dd to relative precision, then shift.
        std::vector<R> dd(d.coeffs().begin() + vd, d.coeffs().end());
        auto ds = LaurentSeries<R>(0, dd, order + vd, like);
        auto ns = LaurentSeries<R>::from_poly(n, order + vd, like);
        return (ns * ds.inverse()).shifted(-vd).truncated(order);
    }
    // At infinity: p(1/s^e) = s^(-e deg p) * rev(p)(s^e).
    int e = p.kind == PlaceKind::InfinityRamified ? 2 : 1;
    auto reversed = [&](const UPoly<R>& q, int ord) {
        std::vector<R> r(static_cast<size_t>(e * q.degree() + 1), zero_like(like));
        for (int k = 0; k <= q.degree(); ++k) r[static_cast<size_t>(e * (q.degree() - k))] = q.coeff(k, like);
        return LaurentSeries<R>(0, std::move(r), ord, like);
    };
    int shift = e * (den.degree() - num.degree());
    int rel = order - shift;
    if (rel <= 0) return LaurentSeries<R>::zero(order, like);
    return (reversed(num, rel) * reversed(den, rel).inverse()).shifted(shift).truncated(order);
}

/// y at the place, satisfying y^2 = f(x) to O(t^order). `d` tags the
/// quadratic field used for sqrt(lc f) at infinity.
template <class R>
LaurentSeries<R> expand_y(const UPoly<R>& f, const Place<R>& p, int order, long d = 0) {
    const R& like = f.lc();
    if (p.kind == PlaceKind::Finite) {
        if (order < 1) throw PrecisionError("expand_y: order must be at least 1");
        if (order > kSeriesTermCap) throw PrecisionError("expand_y: more than the term cap requested");
        if (is_zero(p.y0)) throw ArithmeticError("expand_y: finite places need y0 != 0");
        auto g = LaurentSeries<R>::from_poly(f.shift(p.x0), order, like);
        return series_sqrt(g, p.y0);
    }
    int deg = f.degree();
    int e = p.kind == PlaceKind::InfinityRamified ? 2 : 1;
    if (e == 2 && deg != 3) throw std::invalid_argument("expand_y: ramified infinity needs a cubic model");
    if (e == 1 && deg != 4) throw std::invalid_argument("expand_y: split infinity needs a quartic model");
    int lead_val = -e * deg / 2;  // -2 for quartics, -3 for cubics
    if (order <= lead_val) throw PrecisionError("expand_y: order must exceed the pole order");
    int rel = order - lead_val;
    if (rel > kSeriesTermCap) throw PrecisionError("expand_y: more than the term cap requested");
    std::vector<R> r(static_cast<size_t>(e * deg + 1), zero_like(like));
    for (int k = 0; k <= deg; ++k) r[static_cast<size_t>(e * (deg - k))] = f.coeff(k, like);
    LaurentSeries<R> rev(0, std::move(r), rel, like);
    auto root = sqrt_in_field(like, d);
    if (!root) throw ArithmeticError("expand_y: leading coefficient of f is not a square in the field");
    R r0 = p.kind == PlaceKind::InfinityMinus ? R(-*root) : *root;
    return series_sqrt(rev, r0).shifted(lead_val);
}

}  // namespace belyi

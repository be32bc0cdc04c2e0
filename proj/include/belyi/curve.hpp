#pragma once

// Genus-one models y^2 = f(x) (deg f = 3 or 4), elements P(x) + y Q(x) of
// their function fields, valuations, divisors and j-invariants.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/ratfunc.hpp"
#include "belyi/series.hpp"
#include "belyi/upoly.hpp"

namespace belyi {

template <Field F>
struct CurveModel {
    UPoly<F> f;
    long d = 0;  // quadratic field tag for QuadExt models

    CurveModel() = default;
    CurveModel(UPoly<F> poly, long field_tag = 0) : f(std::move(poly)), d(field_tag) {
        if (f.degree() != 3 && f.degree() != 4) throw std::invalid_argument("curve model needs deg f in {3, 4}");
        if (gcd(f, f.derivative()).degree() > 0) throw std::invalid_argument("curve model is singular");
    }
    bool is_cubic() const { return f.degree() == 3; }
    std::vector<PlaceKind> infinite_places() const {
        if (is_cubic()) return {PlaceKind::InfinityRamified};
        return {PlaceKind::InfinityPlus, PlaceKind::InfinityMinus};
    }
};

template <Field F>
class FunctionFieldElement {
public:
    FunctionFieldElement() = default;
    FunctionFieldElement(const CurveModel<F>& m, RatFunc<F> p, RatFunc<F> q) : model_(m), p_(std::move(p)), q_(std::move(q)) {}

    static FunctionFieldElement constant(const CurveModel<F>& m, const F& c) { return {m, RatFunc<F>::constant(c), {}}; }
    static FunctionFieldElement x(const CurveModel<F>& m) {
        return {m, RatFunc<F>(UPoly<F>{zero_like(m.f.lc()), one_like(m.f.lc())}), {}};
    }
    static FunctionFieldElement y(const CurveModel<F>& m) { return {m, {}, RatFunc<F>::constant(one_like(m.f.lc()))}; }

    const CurveModel<F>& model() const { return model_; }
    const RatFunc<F>& P() const { return p_; }
    const RatFunc<F>& Q() const { return q_; }
    bool is_zero_element() const { return p_.is_zero_rf() && q_.is_zero_rf(); }
    bool is_constant() const { return q_.is_zero_rf() && p_.num().degree() <= 0 && p_.den().degree() <= 0; }

    friend FunctionFieldElement operator+(const FunctionFieldElement& a, const FunctionFieldElement& b) {
        return {a.model_, a.p_ + b.p_, a.q_ + b.q_};
    }
    friend FunctionFieldElement operator-(const FunctionFieldElement& a, const FunctionFieldElement& b) {
        return {a.model_, a.p_ - b.p_, a.q_ - b.q_};
    }
    FunctionFieldElement operator-() const { return {model_, -p_, -q_}; }
    friend FunctionFieldElement operator*(const FunctionFieldElement& a, const FunctionFieldElement& b) {
        RatFunc<F> f(a.model_.f);
        return {a.model_, a.p_ * b.p_ + f * a.q_ * b.q_, a.p_ * b.q_ + a.q_ * b.p_};
    }
    /// P^2 - f Q^2
    RatFunc<F> norm() const { return p_ * p_ - RatFunc<F>(model_.f) * q_ * q_; }
    FunctionFieldElement inverse() const {
        if (is_zero_element()) throw ArithmeticError("inverse of the zero function");
        RatFunc<F> n = norm();
        return {model_, p_ / n, -q_ / n};
    }
    friend FunctionFieldElement operator/(const FunctionFieldElement& a, const FunctionFieldElement& b) { return a * b.inverse(); }
    friend bool operator==(const FunctionFieldElement& a, const FunctionFieldElement& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

    /// d(this)/omega with omega = dx/y: (f Q' + f' Q / 2) + y P'.
    FunctionFieldElement d_over_omega() const {
        RatFunc<F> f(model_.f), fp(model_.f.derivative());
        RatFunc<F> half = RatFunc<F>::constant(one_like(model_.f.lc()) / from_int_like(model_.f.lc(), 2));
        return {model_, f * q_.derivative() + half * fp * q_, p_.derivative()};
    }

    /// Local expansion at a place, to O(t^order).
    LaurentSeries<F> series_at(const Place<F>& pl, int order) const {
        auto ps = expand_rational(p_.num(), p_.den(), pl, order);
        if (q_.is_zero_rf()) return ps;
        int ylead = pl.kind == PlaceKind::Finite ? 0 : (pl.kind == PlaceKind::InfinityRamified ? -3 : -2);
        auto qs = expand_rational(q_.num(), q_.den(), pl, order - ylead);
        if (qs.is_zero_series()) return ps;
        auto y = expand_y(model_.f, pl, order - qs.valuation(), model_.d);
        return (ps + qs * y).truncated(order);
    }

    std::string to_string(const std::string& var = "x") const {
        std::string s = p_.to_string(var);
        if (q_.is_zero_rf()) return s;
        return s + " + y*(" + q_.to_string(var) + ")";
    }

private:
    CurveModel<F> model_;
    RatFunc<F> p_;
    RatFunc<F> q_;
};

// --- valuations -------------------------------------------------------------------

/// Multiplicity of the root x0 in p (p != 0).
template <Field F>
int root_multiplicity(UPoly<F> p, const F& x0) {
    if (p.is_zero_poly()) throw ArithmeticError("root multiplicity in the zero polynomial");
    UPoly<F> lin{-x0, one_like(x0)};
    int k = 0;
    for (;;) {
        auto [q, r] = divmod(p, lin);
        if (!r.is_zero_poly()) return k;
        p = std::move(q);
        ++k;
    }
}

/// Valuation of h at a place. Finite places with y0 = 0 are ramification
/// points (parameter y); all others use local series with growing order.
template <Field F>
int order_at(const FunctionFieldElement<F>& h, const Place<F>& pl) {
    if (h.is_zero_element()) throw ArithmeticError("order_at: zero function");
    const CurveModel<F>& m = h.model();
    if (pl.kind == PlaceKind::InfinityRamified) {
        // x has order -2, y order -3 and their parities keep the terms apart.
        int op = h.P().is_zero_rf() ? 1 << 20 : -2 * h.P().degree();
        int oq = h.Q().is_zero_rf() ? 1 << 20 : -2 * h.Q().degree() - 3;
        return std::min(op, oq);
    }
    if (pl.kind == PlaceKind::Finite && is_zero(pl.y0)) {
        auto v = [&](const RatFunc<F>& r) {
            return r.is_zero_rf() ? (1 << 20) : root_multiplicity(r.num(), pl.x0) - root_multiplicity(r.den(), pl.x0);
        };
        return std::min(2 * v(h.P()), 2 * v(h.Q()) + 1);
    }
    (void)m;
    for (int order = 8; order <= kSeriesTermCap; order *= 2) {
        auto s = h.series_at(pl, order);
        if (!s.is_zero_series()) return s.valuation();
    }
    throw PrecisionError("order_at: no nonzero term within the truncation cap");
}

// --- divisors -----------------------------------------------------------------------

enum class ClusterKind {
    Ramified,  // the points (x, 0) for the roots x of `factor`
    Fiber,     // both points over each root of `factor`
    Branch,    // the single point (x, Y(x)) over each root of `factor`
    Infinity   // one infinite place
};

template <Field F>
struct Cluster {
    ClusterKind kind = ClusterKind::Fiber;
    UPoly<F> factor;  // monic, square-free
    UPoly<F> y_mod;   // Branch: y = y_mod(x) mod factor
    PlaceKind place = PlaceKind::Finite;
    int mult = 0;

    /// Number of geometric points in the cluster.
    int point_count() const {
        switch (kind) {
            case ClusterKind::Ramified:
            case ClusterKind::Branch: return factor.degree();
            case ClusterKind::Fiber: return 2 * factor.degree();
            case ClusterKind::Infinity: return 1;
        }
        return 0;
    }
    std::string to_string() const {
        std::string m = std::to_string(mult);
        switch (kind) {
            case ClusterKind::Ramified: return m + "*[ramified " + factor.to_string() + "]";
            case ClusterKind::Fiber: return m + "*[fiber " + factor.to_string() + "]";
            case ClusterKind::Branch: return m + "*[" + factor.to_string() + ", y=" + y_mod.to_string() + "]";
            case ClusterKind::Infinity: return m + "*[" + place_kind_name(place) + "]";
        }
        return m;
    }
};

template <Field F>
struct Divisor {
    std::vector<Cluster<F>> clusters;

    int degree() const {
        int d = 0;
        for (const auto& c : clusters) d += c.mult * c.point_count();
        return d;
    }
    /// Point multiplicities, sorted descending (zeros first), each point listed.
    std::vector<int> pattern() const {
        std::vector<int> out;
        for (const auto& c : clusters)
            for (int i = 0; i < c.point_count(); ++i) out.push_back(c.mult);
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }
    std::vector<int> zero_pattern() const {
        std::vector<int> out;
        for (int m : pattern())
            if (m > 0) out.push_back(m);
        return out;
    }
    /// Most negative first.
    std::vector<int> pole_pattern() const {
        std::vector<int> out;
        for (int m : pattern())
            if (m < 0) out.push_back(m);
        std::sort(out.begin(), out.end());
        return out;
    }
    std::string to_string() const {
        std::string s;
        for (const auto& c : clusters) s += (s.empty() ? "" : " + ") + c.to_string();
        return s.empty() ? "0" : s;
    }
};

/// Splits the square-free g into pieces on whose roots p has a constant
/// valuation; returns (piece, valuation) pairs.
template <Field F>
std::vector<std::pair<UPoly<F>, int>> valuation_split(const UPoly<F>& g, UPoly<F> p) {
    std::vector<std::pair<UPoly<F>, int>> out;
    if (g.degree() <= 0) return out;
    if (p.is_zero_poly()) {
        out.emplace_back(monic(g), 1 << 20);
        return out;
    }
    UPoly<F> rest = monic(g);
    int v = 0;
    while (rest.degree() > 0) {
        UPoly<F> h = gcd(rest, p);
        UPoly<F> part = *exact_divide(rest, h);
        if (part.degree() > 0) out.emplace_back(monic(part), v);
        rest = h;
        if (rest.degree() > 0) p = *exact_divide(p, rest);
        ++v;
    }
    return out;
}

/// Pairwise coprime square-free polynomials whose products generate the
/// same roots as the inputs.
template <Field F>
std::vector<UPoly<F>> coprime_base(const std::vector<UPoly<F>>& polys) {
    std::vector<UPoly<F>> base;
    for (UPoly<F> p : polys) {
        if (p.degree() <= 0) continue;
        for (const auto& s : squarefree_decomposition(p)) {
            UPoly<F> cur = s;
            std::vector<UPoly<F>> next;
            for (const auto& q : base) {
                UPoly<F> g = gcd(cur, q);
                if (g.degree() <= 0) {
                    next.push_back(q);
                    continue;
                }
                UPoly<F> qg = *exact_divide(q, g);
                next.push_back(g);
                if (qg.degree() > 0) next.push_back(monic(qg));
                cur = *exact_divide(cur, g);
            }
            if (cur.degree() > 0) next.push_back(monic(cur));
            base = std::move(next);
        }
    }
    return base;
}

/// Multiplicity of the (monic, square-free) b in p, assuming b's roots all
/// share it.
template <Field F>
int factor_multiplicity(UPoly<F> p, const UPoly<F>& b) {
    int k = 0;
    while (!p.is_zero_poly()) {
        auto [q, r] = divmod(p, b);
        if (!r.is_zero_poly()) break;
        p = std::move(q);
        ++k;
    }
    return k;
}

template <Field F>
Divisor<F> divisor_of(const FunctionFieldElement<F>& h) {
    if (h.is_zero_element()) throw ArithmeticError("divisor_of: zero function");
    const CurveModel<F>& m = h.model();
    const F& like = m.f.lc();
    // h = (A + y B) / C with polynomials A, B, C.
    UPoly<F> dp = h.P().den(), dq = h.Q().den();
    UPoly<F> C = *exact_divide(dp * dq, gcd(dp, dq));
    UPoly<F> A = *exact_divide(h.P().num() * C, dp);
    UPoly<F> B = h.Q().is_zero_rf() ? UPoly<F>{} : *exact_divide(h.Q().num() * C, dq);
    UPoly<F> H = B.is_zero_poly() ? monic(A) : gcd(A, B);
    UPoly<F> A1 = *exact_divide(A, H);
    UPoly<F> B1 = B.is_zero_poly() ? UPoly<F>{} : *exact_divide(B, H);
    UPoly<F> N1 = A1 * A1 - m.f * B1 * B1;
    if (N1.is_zero_poly()) throw std::logic_error("divisor_of: vanishing norm");

    Divisor<F> out;
    // ramification points
    for (auto [g1, va] : valuation_split(m.f, A)) {
        for (auto [g2, vb] : valuation_split(g1, B)) {
            for (auto [g3, vc] : valuation_split(g2, C)) {
                int ord = std::min(2 * va, 2 * vb + 1) - 2 * vc;
                if (ord != 0) out.clusters.push_back({ClusterKind::Ramified, g3, {}, PlaceKind::Finite, ord});
            }
        }
    }
    // unramified finite points
    for (const UPoly<F>& b0 : coprime_base<F>({H, C, N1})) {
        UPoly<F> b = *exact_divide(b0, gcd(b0, m.f));
        if (b.degree() <= 0) continue;
        int fiber = factor_multiplicity(H, b) - factor_multiplicity(C, b);
        int branch = factor_multiplicity(N1, b);
        if (branch == 0) {
            if (fiber != 0) out.clusters.push_back({ClusterKind::Fiber, b, {}, PlaceKind::Finite, fiber});
            continue;
        }
        UPoly<F> Y = divmod(UPoly<F>(-A1) * inverse_mod(B1, b), b).second;
        if (fiber + branch != 0) out.clusters.push_back({ClusterKind::Branch, b, Y, PlaceKind::Finite, fiber + branch});
        if (fiber != 0) out.clusters.push_back({ClusterKind::Branch, b, divmod(-Y, b).second, PlaceKind::Finite, fiber});
    }
    // infinity
    for (PlaceKind k : m.infinite_places()) {
        int ord = order_at(h, Place<F>::at_infinity(k, like));
        if (ord != 0) out.clusters.push_back({ClusterKind::Infinity, {}, {}, k, ord});
    }
    if (out.degree() != 0) throw std::logic_error("divisor_of: degree " + std::to_string(out.degree()) + " != 0");
    return out;
}

/// Order of h at every point of a cluster (clusters are built so that this
/// is constant); checked against the local series at one point when that
/// point has coordinates in F.
template <Field F>
std::optional<Place<F>> cluster_place(const Cluster<F>& c, const F& like) {
    if (c.kind == ClusterKind::Infinity) return Place<F>::at_infinity(c.place, like);
    if (c.factor.degree() != 1) return std::nullopt;
    F x0 = -c.factor.coeff(0);
    if (c.kind == ClusterKind::Ramified) return Place<F>::finite(x0, zero_like(like));
    if (c.kind == ClusterKind::Branch) return Place<F>::finite(x0, c.y_mod.eval(x0, [](const F& v) { return v; }));
    return std::nullopt;
}

// --- norms and j-invariants -----------------------------------------------------------

template <Field F>
std::pair<RatFunc<F>, RatFunc<F>> norms(const FunctionFieldElement<F>& beta) {
    RatFunc<F> one = RatFunc<F>::constant(one_like(beta.model().f.lc()));
    FunctionFieldElement<F> b1(beta.model(), beta.P() - one, beta.Q());
    return {beta.norm(), b1.norm()};
}

/// Binary-quartic invariants of f = a x^4 + b x^3 + c x^2 + d x + e.
template <Field F>
std::pair<F, F> quartic_invariants(const UPoly<F>& f) {
    F z = zero_like(f.lc());
    F a = f.coeff(4, z), b = f.coeff(3, z), c = f.coeff(2, z), d = f.coeff(1, z), e = f.coeff(0, z);
    auto k = [&](long v) { return from_int_like(z, v); };
    F I = k(12) * a * e - k(3) * b * d + c * c;
    F J = k(72) * a * c * e + k(9) * b * c * d - k(27) * a * d * d - k(27) * e * b * b - k(2) * c * c * c;
    return {I, J};
}

/// j = 1728 * 4 I^3 / (4 I^3 - J^2).
template <Field F>
F j_invariant(const UPoly<F>& f) {
    auto [I, J] = quartic_invariants(f);
    F z = zero_like(f.lc());
    F four_i3 = from_int_like(z, 4) * I * I * I;
    F den = four_i3 - J * J;
    if (is_zero(den)) throw ArithmeticError("j_invariant: singular model");
    return from_int_like(z, 1728) * four_i3 / den;
}

template <Field F>
F j_invariant(const CurveModel<F>& m) {
    return j_invariant(m.f);
}

}  // namespace belyi

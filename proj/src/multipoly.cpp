#include "belyi/multipoly.hpp"

#include <algorithm>

namespace belyi {

namespace {

Integer abs_int(const Integer& z) { return z < 0 ? Integer(-z) : z; }

// Normalizes to positive leading coefficient in the stored order.
QPoly positive_lead(const QPoly& p) {
    if (p.is_zero_poly() || sgn(p.leading_coefficient()) > 0) return p;
    return -p;
}

QPoly lift(const QPoly& like, const Rational& v) { return QPoly(like.vars(), v); }

// First variable used by either polynomial, or SIZE_MAX.
size_t main_var(const QPoly& a, const QPoly& b) {
    size_t n = std::max(a.nvars(), b.nvars());
    for (size_t i = 0; i < n; ++i)
        if (a.uses_var(i) || b.uses_var(i)) return i;
    return SIZE_MAX;
}

QPoly divide_or_throw(const QPoly& p, const QPoly& q) {
    auto r = exact_divide(p, q);
    if (!r) throw ArithmeticError("expected exact polynomial division");
    return std::move(*r);
}

using UP = UPoly<QPoly>;

UP scale(const UP& u, const QPoly& s) {
    std::vector<QPoly> cs;
    for (const auto& c : u.coeffs()) cs.push_back(c * s);
    return UP(std::move(cs));
}

UP divide_coeffs(const UP& u, const QPoly& s) {
    std::vector<QPoly> cs;
    for (const auto& c : u.coeffs()) cs.push_back(divide_or_throw(c, s));
    return UP(std::move(cs));
}

// lc(B)^(deg A - deg B + 1) * A mod B, computed without division.
UP pseudo_remainder(UP a, const UP& b) {
    const QPoly& lb = b.lc();
    int db = b.degree();
    int e = a.degree() - db + 1;
    while (!a.is_zero_poly() && a.degree() >= db) {
        QPoly la = a.lc();
        int shift = a.degree() - db;
        a = scale(a, lb) - scale(b, la) * UP::monomial(one_like(la), shift);
        --e;
    }
    if (e > 0) a = scale(a, lb.pow(static_cast<unsigned>(e)));
    return a;
}

// Last nonzero element of the subresultant PRS of a and b (deg a >= deg b).
UP subresultant_last(UP a, UP b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    QPoly g = one_like(a.lc());
    QPoly h = g;
    while (!b.is_zero_poly()) {
        int delta = a.degree() - b.degree();
        UP r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero_poly()) break;
        b = divide_coeffs(r, g * h.pow(static_cast<unsigned>(delta)));
        g = a.lc();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = divide_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    return a;
}

QPoly content_in(const QPoly& p, size_t var);

QPoly prs_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero_poly()) return b.is_zero_poly() ? b : primitive_part(b);
    if (b.is_zero_poly()) return primitive_part(a);
    size_t v = main_var(a, b);
    if (v == SIZE_MAX) return lift(a.vars() ? a : b, Rational(1));
    if (!a.uses_var(v)) return prs_gcd(a, content_in(b, v));
    if (!b.uses_var(v)) return prs_gcd(content_in(a, v), b);
    QPoly ca = content_in(a, v), cb = content_in(b, v);
    QPoly g = prs_gcd(ca, cb);
    UP pa = a.as_univariate(v), pb = b.as_univariate(v);
    pa = divide_coeffs(pa, ca);
    pb = divide_coeffs(pb, cb);
    UP s = subresultant_last(pa, pb);
    VarList vars = a.vars() ? a.vars() : b.vars();
    if (s.degree() <= 0) return primitive_part(g);
    QPoly sp = QPoly::from_univariate(s, vars, v);
    sp = divide_or_throw(sp, content_in(sp, v));
    return primitive_part(g * sp);
}

// gcd of the coefficients of p viewed as a polynomial in var.
QPoly content_in(const QPoly& p, size_t var) {
    UP u = p.as_univariate(var);
    QPoly g;
    bool first = true;
    for (const auto& c : u.coeffs()) {
        if (c.is_zero_poly()) continue;
        if (first) {
            g = primitive_part(c);
            first = false;
        } else {
            g = poly_gcd(g, c);
        }
        if (g.is_constant()) return lift(p, Rational(1));
    }
    return g;
}

// --- heuristic gcd over Z[vars] ----------------------------------------------

Integer integer_content(const QPoly& p) {
    Integer g = 0;
    for (const auto& [e, c] : p.terms()) {
        g = gcd(g, Integer(c.get_num()));
        if (g == 1) break;
    }
    return g;
}

Integer coeff_norm(const QPoly& p) {
    Integer m = 0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, abs_int(c.get_num()));
    return m;
}

// Symmetric remainder of every coefficient modulo xi.
QPoly symmetric_mod(const QPoly& p, const Integer& xi) {
    QPoly::Terms t;
    Integer half = xi / 2;
    for (const auto& [e, c] : p.terms()) {
        Integer r = c.get_num() % xi;
        if (r < 0) r += xi;
        if (r > half) r -= xi;
        if (r != 0) t.emplace(e, Rational(r));
    }
    return QPoly(p.vars(), std::move(t));
}

std::optional<QPoly> heuristic_gcd(const QPoly& a, const QPoly& b, int depth);

// gcd over Z[vars] of integer polynomials; nullopt if the heuristic gave up.
std::optional<QPoly> int_gcd(const QPoly& a, const QPoly& b, int depth) {
    if (a.is_zero_poly()) return b;
    if (b.is_zero_poly()) return a;
    Integer ca = integer_content(a), cb = integer_content(b);
    Integer g = gcd(ca, cb);
    QPoly a1 = a.scaled(Rational(1) / Rational(ca)), b1 = b.scaled(Rational(1) / Rational(cb));
    VarList vars = a.vars() ? a.vars() : b.vars();
    if (a1.is_constant() || b1.is_constant()) return QPoly(vars, Rational(g));
    auto h = heuristic_gcd(a1, b1, depth);
    if (!h) return std::nullopt;
    return h->scaled(Rational(g));
}

std::optional<QPoly> heuristic_gcd(const QPoly& a, const QPoly& b, int depth) {
    if (depth > 8) return std::nullopt;
    size_t v = main_var(a, b);
    VarList vars = a.vars() ? a.vars() : b.vars();
    if (!a.uses_var(v) || !b.uses_var(v)) {
        const QPoly& with = a.uses_var(v) ? a : b;
        QPoly acc = a.uses_var(v) ? b : a;
        UP u = with.as_univariate(v);
        for (const auto& c : u.coeffs()) {
            if (c.is_zero_poly()) continue;
            auto r = int_gcd(acc, c, depth + 1);
            if (!r) return std::nullopt;
            acc = std::move(*r);
            if (acc.is_constant()) break;
        }
        return positive_lead(acc);
    }
    Integer xi = 2 * std::min(coeff_norm(a), coeff_norm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        QPoly av = a.evaluate(v, Rational(xi)), bv = b.evaluate(v, Rational(xi));
        auto gamma = int_gcd(av, bv, depth + 1);
        if (gamma) {
            QPoly rest = *gamma;
            QPoly x = QPoly::variable(vars, vars->at(v));
            QPoly g(vars, Rational(0));
            QPoly xpow(vars, Rational(1));
            while (!rest.is_zero_poly()) {
                QPoly digit = symmetric_mod(rest, xi);
                g += digit * xpow;
                rest = (rest - digit).scaled(Rational(1) / Rational(xi));
                xpow *= x;
            }
            if (!g.is_zero_poly()) {
                g = primitive_part(g);
                if (exact_divide(a, g) && exact_divide(b, g)) return g;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace

Rational rational_content(const QPoly& p) {
    if (p.is_zero_poly()) return Rational(0);
    Integer num = 0, den = 1;
    for (const auto& [e, c] : p.terms()) {
        num = gcd(num, Integer(c.get_num()));
        den = lcm(den, Integer(c.get_den()));
    }
    Rational r(num, den);
    r.canonicalize();
    if (sgn(p.leading_coefficient()) < 0) r = -r;
    return r;
}

QPoly primitive_part(const QPoly& p) {
    if (p.is_zero_poly()) return p;
    return p.scaled(Rational(1) / rational_content(p));
}

Integer max_norm(const QPoly& p) { return coeff_norm(primitive_part(p)); }

QPoly poly_gcd_prs(const QPoly& p, const QPoly& q) {
    MultiPoly<Rational>::check_compatible(p.vars(), q.vars());
    return positive_lead(prs_gcd(p, q));
}

QPoly poly_gcd(const QPoly& p, const QPoly& q) {
    MultiPoly<Rational>::check_compatible(p.vars(), q.vars());
    if (p.is_zero_poly() && q.is_zero_poly()) return p;
    if (p.is_zero_poly()) return primitive_part(q);
    if (q.is_zero_poly()) return primitive_part(p);
    QPoly a = primitive_part(p), b = primitive_part(q);
    VarList vars = a.vars() ? a.vars() : b.vars();
    if (a.is_constant() || b.is_constant()) return QPoly(vars, Rational(1));
    if (auto h = heuristic_gcd(a, b, 0)) return positive_lead(primitive_part(*h));
    return poly_gcd_prs(a, b);
}

QPoly resultant(const QPoly& p, const QPoly& q, const std::string& var) {
    MultiPoly<Rational>::check_compatible(p.vars(), q.vars());
    if (p.degree(var) <= 0 || q.degree(var) <= 0)
        throw std::invalid_argument("resultant: both polynomials need positive degree in " + var);
    VarList vars = p.vars() ? p.vars() : q.vars();
    size_t v = p.has_var(var) ? p.index_of(var) : q.index_of(var);
    UP a = p.as_univariate(v), b = q.as_univariate(v);
    int sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
    }
    QPoly g(vars, Rational(1)), h(vars, Rational(1));
    for (;;) {
        int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
        UP r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero_poly()) return QPoly(vars, Rational(0));
        b = divide_coeffs(r, g * h.pow(static_cast<unsigned>(delta)));
        g = a.lc();
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = divide_or_throw(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
        if (b.degree() <= 0) break;
    }
    int da = a.degree();
    QPoly lb = b.lc();
    QPoly res = da == 1 ? lb : divide_or_throw(lb.pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
    return sign < 0 ? -res : res;
}

UPoly<Rational> to_upoly(const QPoly& p, const std::string& var) {
    std::vector<Rational> cs;
    if (p.is_zero_poly()) return {};
    if (!p.has_var(var)) return UPoly<Rational>::constant(p.constant_value());
    size_t v = p.index_of(var);
    int d = p.degree(v);
    cs.assign(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) {
        for (size_t i = 0; i < e.size(); ++i)
            if (i != v && e[i] != 0) throw std::invalid_argument("to_upoly: polynomial uses other variables");
        cs[static_cast<size_t>(e[v])] = c;
    }
    return UPoly<Rational>(std::move(cs));
}

QPoly from_upoly(const UPoly<Rational>& u, const VarList& vars, const std::string& var) {
    QPoly x = QPoly::variable(vars, var);
    QPoly acc(vars, Rational(0));
    for (int k = u.degree(); k >= 0; --k) acc = acc * x + QPoly(vars, u.coeff(k));
    return acc;
}

std::vector<QPoly> squarefree_parts(const QPoly& p, const std::string& var) {
    std::vector<QPoly> out;
    for (const auto& s : squarefree_decomposition(to_upoly(p, var))) out.push_back(primitive_part(from_upoly(s, p.vars(), var)));
    return out;
}

}  // namespace belyi

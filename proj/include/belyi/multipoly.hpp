#pragma once

// Sparse multivariate polynomials over a coefficient ring, stored as a map
// from exponent vectors to nonzero coefficients in graded-lex order (leading
// term first). A polynomial carries its variable list; constants built
// without a variable list combine with any polynomial.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "belyi/ring.hpp"
#include "belyi/upoly.hpp"

namespace belyi {

using VarList = std::shared_ptr<const std::vector<std::string>>;

inline VarList make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

using Exponents = std::vector<int>;

/// Graded-lex "greater": higher total degree first, then lexicographically
/// larger exponent vectors first.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

template <class R>
class MultiPoly {
public:
    using Terms = std::map<Exponents, R, GrlexGreater>;

    MultiPoly() = default;
    MultiPoly(int v) : MultiPoly(R(v)) {}  // NOLINT(google-explicit-constructor)
    explicit MultiPoly(R v) {
        if (!is_zero(v)) terms_.emplace(Exponents{}, std::move(v));
    }
    MultiPoly(VarList vars, R v) : vars_(std::move(vars)) {
        if (!is_zero(v)) terms_.emplace(Exponents(nvars(), 0), std::move(v));
    }
    MultiPoly(VarList vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) { prune(); }

    static MultiPoly variable(const VarList& vars, const std::string& name) {
        size_t i = index_in(vars, name);
        Exponents e(vars->size(), 0);
        e[i] = 1;
        Terms t;
        t.emplace(std::move(e), R(1));
        return MultiPoly(vars, std::move(t));
    }

    const VarList& vars() const { return vars_; }
    size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const Terms& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero_poly() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }
    /// Value of a constant polynomial.
    R constant_value() const {
        if (!is_constant()) throw std::domain_error("constant_value of non-constant polynomial");
        return terms_.empty() ? R(0) : terms_.begin()->second;
    }
    R constant_term() const {
        for (const auto& [e, c] : terms_) {
            bool z = true;
            for (int v : e) z = z && v == 0;
            if (z) return c;
        }
        return R(0);
    }
    R coefficient_of(const Exponents& e) const {
        auto it = terms_.find(pad(e));
        return it == terms_.end() ? R(0) : it->second;
    }
    const R& leading_coefficient() const { return terms_.begin()->second; }
    const Exponents& leading_exponents() const { return terms_.begin()->first; }

    size_t index_of(const std::string& name) const { return index_in(vars_, name); }
    bool has_var(const std::string& name) const {
        if (!vars_) return false;
        for (const auto& v : *vars_)
            if (v == name) return true;
        return false;
    }

    int degree(size_t var) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_)
            if (var < e.size()) d = std::max(d, e[var]);
        return d;
    }
    int degree(const std::string& name) const { return has_var(name) ? degree(index_of(name)) : (terms_.empty() ? -1 : 0); }
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }
    bool uses_var(size_t var) const { return degree(var) > 0; }

    // --- arithmetic ---------------------------------------------------------

    MultiPoly& operator+=(const MultiPoly& o) {
        unify(o);
        for (const auto& [e, c] : o.terms_) add_term(o.pad_to(e, nvars()), c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        unify(o);
        for (const auto& [e, c] : o.terms_) add_term(o.pad_to(e, nvars()), -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        r.vars_ = a.vars_ ? a.vars_ : b.vars_;
        check_compatible(a.vars_, b.vars_);
        if (a.terms_.empty() || b.terms_.empty()) return r;
        size_t n = r.nvars();
        Exponents e(n, 0);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < n; ++i) e[i] = (i < ea.size() ? ea[i] : 0) + (i < eb.size() ? eb[i] : 0);
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly scaled(const R& s) const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = c * s;
        r.prune();
        return r;
    }
    MultiPoly divide_by_int(long n) const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = belyi::divide_by_int(c, n);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_)) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (!(ia->second == ib->second)) return false;
            if (!same_exps(ia->first, ib->first)) return false;
        }
        return true;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly base = *this;
        MultiPoly r(vars_, R(1));
        while (k) {
            if (k & 1U) r *= base;
            k >>= 1U;
            if (k) base *= base;
        }
        return r;
    }

    // --- structure ----------------------------------------------------------

    /// Coefficient of var^k, as a polynomial in the same variable list.
    MultiPoly coefficient(size_t var, int k) const {
        MultiPoly r;
        r.vars_ = vars_;
        for (const auto& [e, c] : terms_) {
            int ek = var < e.size() ? e[var] : 0;
            if (ek != k) continue;
            Exponents f = pad_to(e, nvars());
            f[var] = 0;
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }
    MultiPoly coefficient(const std::string& name, int k) const {
        if (!has_var(name)) return k == 0 ? *this : MultiPoly(vars_, R(0));
        return coefficient(index_of(name), k);
    }

    /// View as a polynomial in `var` with coefficients free of `var`.
    UPoly<MultiPoly> as_univariate(size_t var) const {
        int d = degree(var);
        std::vector<MultiPoly> cs;
        for (int k = 0; k <= d; ++k) cs.push_back(coefficient(var, k));
        return UPoly<MultiPoly>(std::move(cs));
    }
    static MultiPoly from_univariate(const UPoly<MultiPoly>& u, const VarList& vars, size_t var) {
        MultiPoly x = variable(vars, vars->at(var));
        MultiPoly acc(vars, R(0));
        for (int k = u.degree(); k >= 0; --k) acc = acc * x + u.coeff(k, acc);
        return acc;
    }

    /// Replace variable `var` by polynomial `value`.
    MultiPoly substitute(size_t var, const MultiPoly& value) const {
        if (!uses_var(var)) return *this;
        auto u = as_univariate(var);
        MultiPoly acc(vars_, R(0));
        for (int k = u.degree(); k >= 0; --k) acc = acc * value + u.coeff(k, acc);
        return acc;
    }
    MultiPoly substitute(const std::string& name, const MultiPoly& value) const {
        if (!has_var(name)) return *this;
        return substitute(index_of(name), value);
    }
    MultiPoly evaluate(size_t var, const R& value) const { return substitute(var, MultiPoly(vars_, value)); }

    /// Evaluates all variables: `values[i]` is the value of variable i in
    /// ring T; `embed` maps coefficients into T.
    template <class T, class Embed>
    T eval(const std::vector<T>& values, Embed embed, const T& zero) const {
        T acc = zero;
        for (const auto& [e, c] : terms_) {
            T t = embed(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t = t * values[i];
            acc = acc + t;
        }
        return acc;
    }

    MultiPoly derivative(size_t var) const {
        MultiPoly r;
        r.vars_ = vars_;
        for (const auto& [e, c] : terms_) {
            if (var >= e.size() || e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            r.add_term(f, from_int_like(c, e[var]) * c);
        }
        return r;
    }

    /// Re-express over another variable list; every used variable must exist
    /// there.
    MultiPoly rebase(const VarList& target) const {
        MultiPoly r;
        r.vars_ = target;
        std::vector<size_t> map;
        for (size_t i = 0; i < nvars(); ++i) map.push_back(SIZE_MAX);
        for (size_t i = 0; i < nvars(); ++i) {
            if (!uses_var(i)) continue;
            map[i] = index_in(target, vars_->at(i));
        }
        for (const auto& [e, c] : terms_) {
            Exponents f(target->size(), 0);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) f[map[i]] = e[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    template <class Fn>
    auto map_coefficients(Fn fn) const {
        using T = decltype(fn(std::declval<const R&>()));
        typename MultiPoly<T>::Terms t;
        for (const auto& [e, c] : terms_) t.emplace(e, fn(c));
        return MultiPoly<T>(vars_, std::move(t));
    }

    std::string to_string() const;

    // Exposed for the free algorithms below.
    static bool same_vars(const VarList& a, const VarList& b) { return a == b || (a && b && *a == *b); }
    static void check_compatible(const VarList& a, const VarList& b) {
        if (a && b && !same_vars(a, b)) throw std::invalid_argument("MultiPoly: incompatible variable lists");
    }

private:
    static size_t index_in(const VarList& vars, const std::string& name) {
        if (vars)
            for (size_t i = 0; i < vars->size(); ++i)
                if ((*vars)[i] == name) return i;
        throw std::invalid_argument("unknown variable: " + name);
    }
    static bool same_exps(const Exponents& a, const Exponents& b) {
        size_t n = std::max(a.size(), b.size());
        for (size_t i = 0; i < n; ++i)
            if ((i < a.size() ? a[i] : 0) != (i < b.size() ? b[i] : 0)) return false;
        return true;
    }
    Exponents pad(const Exponents& e) const { return pad_to(e, nvars()); }
    static Exponents pad_to(const Exponents& e, size_t n) {
        if (e.size() == n) return e;
        Exponents f(n, 0);
        for (size_t i = 0; i < std::min(n, e.size()); ++i) f[i] = e[i];
        return f;
    }
    void unify(const MultiPoly& o) {
        check_compatible(vars_, o.vars_);
        if (!vars_ && o.vars_) {
            vars_ = o.vars_;
            Terms t;
            for (auto& [e, c] : terms_) t.emplace(pad_to(e, nvars()), std::move(c));
            terms_ = std::move(t);
        }
    }
    void add_term(const Exponents& e, const R& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    VarList vars_;
    Terms terms_;
};

template <class R>
bool is_zero(const MultiPoly<R>& p) {
    return p.is_zero_poly();
}

template <class R>
MultiPoly<R> zero_like(const MultiPoly<R>& p) {
    return MultiPoly<R>(p.vars(), R(0));
}

template <class R>
MultiPoly<R> one_like(const MultiPoly<R>& p) {
    return MultiPoly<R>(p.vars(), R(1));
}

template <class R>
MultiPoly<R> from_int_like(const MultiPoly<R>& p, long v) {
    return MultiPoly<R>(p.vars(), R(static_cast<int>(v)));
}

template <class R>
std::optional<MultiPoly<R>> try_sqrt(const MultiPoly<R>& p) {
    if (!p.is_constant()) return std::nullopt;
    auto s = try_sqrt(p.constant_value());
    if (!s) return std::nullopt;
    return MultiPoly<R>(p.vars(), *s);
}

template <class R>
std::optional<MultiPoly<R>> invert_unit(const MultiPoly<R>& p) {
    if (!p.is_constant() || p.is_zero_poly()) return std::nullopt;
    auto inv = invert_unit(p.constant_value());
    if (!inv) return std::nullopt;
    return MultiPoly<R>(p.vars(), *inv);
}

template <class R>
std::optional<MultiPoly<R>> sqrt_in_field(const MultiPoly<R>& p, long d) {
    if (!p.is_constant()) return std::nullopt;
    auto s = sqrt_in_field(p.constant_value(), d);
    if (!s) return std::nullopt;
    return MultiPoly<R>(p.vars(), *s);
}

template <class R>
std::string MultiPoly<R>::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += (*vars_)[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = belyi::to_string(c);
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        std::string term;
        if (mono.empty()) {
            term = compound ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            term = mono;
        } else if (cs == "-1") {
            term = "-" + mono;
        } else {
            term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
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
std::string to_string(const MultiPoly<R>& p) {
    return p.to_string();
}

using QPoly = MultiPoly<Rational>;

// --- algorithms over Q -------------------------------------------------------

/// Exact quotient p / q if q divides p; throws on q == 0.
template <Field F>
std::optional<MultiPoly<F>> exact_divide(const MultiPoly<F>& p, const MultiPoly<F>& q) {
    if (q.is_zero_poly()) throw ArithmeticError("exact_divide: division by zero polynomial");
    MultiPoly<F>::check_compatible(p.vars(), q.vars());
    VarList vars = p.vars() ? p.vars() : q.vars();
    size_t n = vars ? vars->size() : 0;
    auto padded = [n](const Exponents& e) {
        Exponents f(n, 0);
        for (size_t i = 0; i < std::min(n, e.size()); ++i) f[i] = e[i];
        return f;
    };
    MultiPoly<F> rem = p;
    typename MultiPoly<F>::Terms quo;
    const Exponents lq = padded(q.leading_exponents());
    const F& cq = q.leading_coefficient();
    while (!rem.is_zero_poly()) {
        Exponents lr = padded(rem.leading_exponents());
        Exponents d(n, 0);
        for (size_t i = 0; i < n; ++i) {
            d[i] = lr[i] - lq[i];
            if (d[i] < 0) return std::nullopt;
        }
        F c = rem.leading_coefficient() / cq;
        typename MultiPoly<F>::Terms t;
        t.emplace(d, c);
        MultiPoly<F> mono(vars, std::move(t));
        rem -= mono * q;
        quo.emplace(std::move(d), std::move(c));
    }
    return MultiPoly<F>(vars, std::move(quo));
}

/// Largest power k with q^k | p (q non-constant), and the cofactor.
template <Field F>
std::pair<int, MultiPoly<F>> divide_out(MultiPoly<F> p, const MultiPoly<F>& q) {
    int k = 0;
    while (!p.is_zero_poly()) {
        auto d = exact_divide(p, q);
        if (!d) break;
        p = std::move(*d);
        ++k;
    }
    return {k, std::move(p)};
}

/// Positive rational content c with p = c * (integer primitive polynomial
/// whose leading coefficient is positive).
Rational rational_content(const QPoly& p);
QPoly primitive_part(const QPoly& p);
/// Largest absolute value of the numerators after making p integral.
Integer max_norm(const QPoly& p);

/// Greatest common divisor over Q[vars], normalized to an integer primitive
/// polynomial with positive leading coefficient (1 when coprime).
QPoly poly_gcd(const QPoly& p, const QPoly& q);
/// The subresultant-PRS gcd on its own (used as fallback and cross-check).
QPoly poly_gcd_prs(const QPoly& p, const QPoly& q);

/// Resultant with respect to `var`, via the subresultant PRS.
QPoly resultant(const QPoly& p, const QPoly& q, const std::string& var);

/// Square-free decomposition of a univariate polynomial held as a QPoly.
std::vector<QPoly> squarefree_parts(const QPoly& p, const std::string& var);

/// Univariate conversions (p must use at most `var`).
UPoly<Rational> to_upoly(const QPoly& p, const std::string& var);
QPoly from_upoly(const UPoly<Rational>& u, const VarList& vars, const std::string& var);

}  // namespace belyi

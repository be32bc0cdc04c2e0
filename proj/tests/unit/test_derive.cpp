#include "doctest.h"

#include <random>

#include "belyi/derive.hpp"
#include "belyi/parse.hpp"

using namespace belyi;

namespace {

// The symbolic stages are cheap; share one run up to the resultant.
Derivation& pipeline() {
    static Derivation d = [] {
        Derivation x;
        for (const char* s : {"series", "u_ansatz", "residue_ratio", "a2", "c2_system", "linear_systems", "determinant",
                              "k1", "residue_equation", "resultant"})
            x.run(s);
        return x;
    }();
    return d;
}

// forces a gmp expression template to a value
template <class E>
Rational R(const E& e) {
    return Rational(e);
}

// small random rationals, avoiding 0
struct RatGen {
    std::mt19937 rng;
    explicit RatGen(unsigned seed) : rng(seed) {}
    Rational operator()() {
        std::uniform_int_distribution<long> num(-40, 40), den(1, 9);
        long n = 0;
        while (n == 0) n = num(rng);
        return frac(n, den(rng));
    }
};

// Evaluates p at named rational values (missing variables are an error).
Rational at(const QPoly& p, const std::map<std::string, Rational>& v) {
    std::vector<Rational> vals;
    for (const auto& name : *p.vars()) {
        auto it = v.find(name);
        vals.push_back(it == v.end() ? Rational(0) : it->second);
        if (it == v.end() && p.degree(name) > 0) throw std::invalid_argument("no value for " + name);
    }
    return p.eval<Rational>(vals, [](const Rational& c) { return c; }, Rational(0));
}

Rational upoly_at(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = R(acc * x + c[k]);
    return acc;
}

std::vector<Rational> deriv(const std::vector<Rational>& c) {
    std::vector<Rational> d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(R(c[k] * Rational(static_cast<long>(k))));
    return d;
}

// Laplace expansion; only for tiny matrices.
Rational laplace(const std::vector<std::vector<Rational>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Rational acc = 0;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Rational>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Rational> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Rational t = R(m[0][j] * laplace(minor));
        acc = (j % 2) ? R(acc - t) : R(acc + t);
    }
    return acc;
}

// Independent model of the curve y^2 = f with b = a^2/4 - 25/12 and of W = Q + yR
// at the two finite zeros A1 = (0, 1), A2 = (x2, y2), in exact rationals.
struct PointModel {
    Rational a, c;
    std::vector<Rational> f, q, r;  // low to high
    Rational x2, y2;

    PointModel(const Rational& a_, const Rational& c_, const std::vector<Rational>& rs) : a(a_), c(c_), r(rs) {
        Rational b = R(a * a / 4 - frac(25, 12));
        f = {1, a, b, c, 1};
        // Y(x) = 1 + a x / 2 - 25/24 x^2 is y on the zero set of u
        x2 = R(frac(576, 49) * c + frac(600, 49) * a);
        y2 = upoly_at(std::vector<Rational>{1, R(a / 2), frac(-25, 24)}, x2);
        auto& d = pipeline();
        std::map<std::string, Rational> v{{"a", a}, {"c", c}, {"r0", rs[0]}, {"r1", rs[1]}, {"r2", rs[2]}, {"r3", rs[3]}};
        for (const auto& qk : d.q_formulas) q.push_back(at(qk, v));
    }
    // W and its x-derivatives along the branch through (x0, y0)
    std::array<Rational, 3> taylor(const Rational& x0, const Rational& y0) const {
        Rational fp = upoly_at(deriv(f), x0), fpp = upoly_at(deriv(deriv(f)), x0);
        Rational y1 = R(fp / (2 * y0));
        Rational ypp = R((fpp / 2 - y1 * y1) / y0);
        Rational Q0 = upoly_at(q, x0), Q1 = upoly_at(deriv(q), x0), Q2 = upoly_at(deriv(deriv(q)), x0);
        Rational R0 = upoly_at(r, x0), R1 = upoly_at(deriv(r), x0), R2 = upoly_at(deriv(deriv(r)), x0);
        Rational w0 = R(Q0 + y0 * R0);
        Rational w1 = R(Q1 + y1 * R0 + y0 * R1);
        Rational w2 = R(Q2 / 2 + (ypp * R0) / 2 + y1 * R1 + (y0 * R2) / 2);
        return {w0, w1, w2};
    }
};

std::vector<Rational> unit(int i) {
    std::vector<Rational> e(4, Rational(0));
    e[static_cast<size_t>(i)] = 1;
    return e;
}

std::map<std::string, Rational> ac_point(const Rational& a, const Rational& c) { return {{"a", a}, {"c", c}}; }

}  // namespace

TEST_CASE("solve_linear_for and denominator_lcm") {
    auto v = make_vars({"x", "y"});
    QPoly eq = parse_rational_poly("(y + 1)*x - y^2 + 1", v);
    CHECK(solve_linear_for(eq, "x") == parse_rational_poly("y - 1", v));
    CHECK_THROWS(solve_linear_for(parse_rational_poly("x^2 - y", v), "x"));
    CHECK_THROWS(solve_linear_for(parse_rational_poly("y*x - 1", v), "x"));
    CHECK(denominator_lcm(parse_rational_poly("x/6 + y/4 + 1", v)) == 12);
}

TEST_CASE("every symbolic stage matches the printed intermediate results") {
    Derivation d;
    for (const auto& name : derive_stage_names()) {
        if (name == "cases") break;
        auto st = d.run(name);
        INFO(name);
        for (const auto& c : st.checks) {
            INFO(c.name << " " << c.detail.substr(0, 300));
            CHECK(c.passed);
        }
    }
}

TEST_CASE("series at A1 squares back to f") {
    auto& d = pipeline();
    // (y0 + y1 x + y2 x^2)^2 = 1 + a x + b x^2 mod x^3
    QPoly s0 = d.y_a1[0], s1 = d.y_a1[1], s2 = d.y_a1[2];
    CHECK(s0 * s0 == QPoly(d.vars(), Rational(1)));
    CHECK(s0 * s1 * QPoly(d.vars(), Rational(2)) == d.var("a"));
    CHECK(s1 * s1 + s0 * s2 * QPoly(d.vars(), Rational(2)) == d.var("b"));
}

TEST_CASE("property: u vanishes to order 3 at A1 and the residue ratio is 49") {
    auto& d = pipeline();
    RatGen g(11);
    for (int it = 0; it < 20; ++it) {
        Rational a = g(), c = g();
        Rational b = R(a * a / 4 - frac(25, 12));
        std::vector<Rational> f{1, a, b, c, 1};
        // Y = -(p + q x + r x^2) with s = 1; Y^2 - f = O(x^3)
        std::map<std::string, Rational> v{{"a", a}, {"b", b}, {"s", 1}};
        std::vector<Rational> Y{R(-at(d.subs.at("p"), v)), R(-at(d.subs.at("q"), v)), R(-at(d.subs.at("r"), v))};
        CHECK(R(Y[0] * Y[0]) == f[0]);
        CHECK(R(2 * Y[0] * Y[1]) == f[1]);
        CHECK(R(Y[1] * Y[1] + 2 * Y[0] * Y[2]) == f[2]);
        // the residue of u omega^2 at the points at infinity is lim u / x^2 = r +- s
        Rational r = at(d.subs.at("r"), v);
        CHECK(R((r + 1) / (r - 1)) == 49);
        CHECK(r == frac(25, 24));
    }
}

TEST_CASE("residue of u omega^2 at infinity, numerically") {
    // lim_{x -> oo} (p + q x + r x^2 + s y) / x^2 with y ~ +x^2 or -x^2
    auto& d = pipeline();
    Rational a = frac(3, 7), c = frac(-2, 5), b = R(a * a / 4 - frac(25, 12));
    long prec = 256;
    BigFloat x = ten_pow(30, prec);
    auto fx = [&](const BigFloat& t) {
        return BigFloat(Rational(1), prec) + t * (BigFloat(a, prec) + t * (BigFloat(b, prec) + t * (BigFloat(c, prec) + t)));
    };
    std::map<std::string, Rational> v{{"a", a}, {"b", b}, {"s", 1}};
    BigFloat p(at(d.subs.at("p"), v), prec), q(at(d.subs.at("q"), v), prec), r(at(d.subs.at("r"), v), prec);
    BigFloat y = sqrt(fx(x));
    BigFloat plus = (p + q * x + r * x * x + y) / (x * x), minus = (p + q * x + r * x * x - y) / (x * x);
    Rational ex1 = at(d.res_c1, v), ex2 = at(d.res_c2, v);
    CHECK(abs(plus - BigFloat(ex1, prec)) < BigFloat(1e-20, prec));
    CHECK(abs(minus - BigFloat(ex2, prec)) < BigFloat(1e-20, prec));
}

TEST_CASE("property: A2 is on the curve and on u = 0") {
    auto& d = pipeline();
    RatGen g(5);
    for (int it = 0; it < 20; ++it) {
        Rational a = g(), c = g();
        PointModel m(a, c, unit(3));
        CHECK(at(d.x_a2, ac_point(a, c)) == m.x2);
        CHECK(at(d.y_a2, ac_point(a, c)) == m.y2);
        CHECK(R(m.y2 * m.y2) == upoly_at(m.f, m.x2));
    }
}

TEST_CASE("q formulas make W vanish at C2, numerically") {
    // W(x, y) with y ~ -x^2 must be O(1/x)
    RatGen g(3);
    long prec = 2048;  // the x^5 terms (~1e200) cancel down to O(1/x)
    for (int it = 0; it < 5; ++it) {
        Rational a = g(), c = g();
        std::vector<Rational> rs{g(), g(), g(), g()};
        PointModel m(a, c, rs);
        BigFloat x = ten_pow(40, prec);
        auto ev = [&](const std::vector<Rational>& cs) {
            BigFloat acc(0.0, prec);
            for (size_t k = cs.size(); k-- > 0;) acc = acc * x + BigFloat(cs[k], prec);
            return acc;
        };
        BigFloat y = -sqrt(ev(m.f));
        BigFloat w = ev(m.q) + y * ev(m.r);
        CHECK(abs(w) < ten_pow(-20, prec));
    }
}

TEST_CASE("property: A1 and A2 rows against direct Taylor expansion") {
    auto& d = pipeline();
    RatGen g(17);
    for (int it = 0; it < 6; ++it) {
        Rational a = g(), c = g();
        std::map<std::string, Rational> v = ac_point(a, c);
        for (int i = 0; i < 4; ++i) {
            auto rs = unit(i);
            PointModel m(a, c, rs);
            v["r0"] = rs[0], v["r1"] = rs[1], v["r2"] = rs[2], v["r3"] = rs[3];
            auto wa = m.taylor(0, 1);
            CHECK(at(d.e_rows[0], v) == wa[0]);
            CHECK(at(d.e_rows[1], v) == wa[1]);
            CHECK(at(d.k1_expr, v) == wa[2]);
            if (m.y2 == 0) continue;
            auto wb = m.taylor(m.x2, m.y2);
            Rational yt = R(m.y2 * m.y2);
            CHECK(at(d.f_rows[0], v) == wb[0]);
            CHECK(at(d.f_rows[1], v) == R(yt * wb[1]));
            CHECK(at(d.k2_expr, v) == R(yt * yt * wb[2]));
        }
    }
}

TEST_CASE("property: determinant and residue expression at random points") {
    auto& d = pipeline();
    RatGen g(23);
    Rational le = 2304, lf = Rational(Integer("650822973696"));
    for (int it = 0; it < 6; ++it) {
        Rational a = g(), c = g();
        std::vector<std::vector<Rational>> rows(4, std::vector<Rational>(4));
        std::vector<std::array<Rational, 3>> ta(4), tb(4);
        Rational yt;
        for (int i = 0; i < 4; ++i) {
            PointModel m(a, c, unit(i));
            ta[static_cast<size_t>(i)] = m.taylor(0, 1);
            tb[static_cast<size_t>(i)] = m.taylor(m.x2, m.y2);
            yt = R(m.y2 * m.y2);
        }
        if (yt == 0) continue;
        for (size_t i = 0; i < 4; ++i) {
            rows[0][i] = R(le * ta[i][0]);
            rows[1][i] = R(le * ta[i][1]);
            rows[2][i] = R(lf * tb[i][0]);
            rows[3][i] = R(lf * 2401 * 2401 * yt * tb[i][1]);
        }
        CHECK(at(d.det, ac_point(a, c)) == laplace(rows));

        // k1, k2 by Cramer on (E0, E1, F0) and (E0, F0, F1) with r3 = 1
        auto cramer = [&](const std::vector<std::array<Rational, 4>>& eq, const std::array<Rational, 4>& target) {
            std::vector<std::vector<Rational>> m3(3, std::vector<Rational>(3));
            for (size_t r = 0; r < 3; ++r)
                for (size_t k = 0; k < 3; ++k) m3[r][k] = eq[r][k];
            Rational d3 = laplace(m3);
            Rational val = target[3];
            for (size_t k = 0; k < 3; ++k) {
                auto mk = m3;
                for (size_t r = 0; r < 3; ++r) mk[r][k] = R(-eq[r][3]);
                val += R(target[k] * laplace(mk) / d3);
            }
            return val;
        };
        std::array<Rational, 4> e0, e1, f0, f1, k1t, k2t;
        for (size_t i = 0; i < 4; ++i) {
            e0[i] = ta[i][0], e1[i] = ta[i][1], k1t[i] = ta[i][2];
            f0[i] = tb[i][0], f1[i] = tb[i][1], k2t[i] = tb[i][2];
        }
        Rational k1 = cramer({e0, e1, f0}, k1t);
        Rational k2 = cramer({e0, f0, f1}, k2t);  // unscaled second Taylor coefficient
        RationalFunction expect = d.k1_value;
        CHECK(R(at(expect.num(), ac_point(a, c)) / at(expect.den(), ac_point(a, c))) == k1);
        Rational residue = R(9 * k2 * yt - 25 * k1);
        CHECK(R(at(d.residue_expr.num(), ac_point(a, c)) / at(d.residue_expr.den(), ac_point(a, c))) == residue);
    }
}

TEST_CASE("residue numerator is the primitive part of the residue expression") {
    auto& d = pipeline();
    QPoly p = primitive_part(d.residue_expr.num());
    CHECK((p == d.residue_numerator || -p == d.residue_numerator));
}

TEST_CASE("resultant against a Sylvester determinant at sample points") {
    auto& d = pipeline();
    QPoly F3 = Derivation::printed_f3(d.ac_vars());
    // the ratio res(F3(a0, c), N(a0, c)) / resultant_poly(a0) does not depend on a0
    auto sylvester = [&](const Rational& a0) {
        auto coeffs = [&](const QPoly& p) {
            std::vector<Rational> cs;
            for (int k = p.degree("c"); k >= 0; --k) cs.push_back(at(p.coefficient("c", k), {{"a", a0}, {"c", 0}}));
            return cs;
        };
        auto A = coeffs(F3), B = coeffs(d.residue_numerator);
        size_t m = A.size() - 1, n = B.size() - 1, N = m + n;
        std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N, Rational(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k <= m; ++k) S[i][i + k] = A[k];
        for (size_t i = 0; i < m; ++i)
            for (size_t k = 0; k <= n; ++k) S[n + i][i + k] = B[k];
        // Gaussian elimination over Q
        Rational det = 1;
        for (size_t col = 0; col < N; ++col) {
            size_t p = col;
            while (p < N && S[p][col] == 0) ++p;
            if (p == N) return Rational(0);
            if (p != col) {
                std::swap(S[p], S[col]);
                det = -det;
            }
            det *= S[col][col];
            for (size_t r = col + 1; r < N; ++r) {
                if (S[r][col] == 0) continue;
                Rational f = R(S[r][col] / S[col][col]);
                for (size_t k = col; k < N; ++k) S[r][k] -= R(f * S[col][k]);
            }
        }
        return det;
    };
    Rational r2 = R(sylvester(2) / at(d.resultant_poly, {{"a", 2}})), r3 = R(sylvester(frac(-1, 3)) / at(d.resultant_poly, {{"a", frac(-1, 3)}}));
    CHECK(r2 != 0);
    CHECK(r2 == r3);
}

TEST_CASE("case factors: multiplicities and discriminants") {
    auto& d = pipeline();
    auto fs = Derivation::printed_case_factors(d.ac_vars());
    std::vector<int> mult;
    QPoly rest = d.resultant_poly;
    for (const auto& f : fs) {
        auto [k, r] = divide_out(rest, f);
        mult.push_back(k);
        rest = r;
    }
    CHECK(mult == std::vector<int>{2, 2, 1, 1, 1});
    CHECK(rest.is_constant());
    // discriminants of the quartics as quadratics in a^2
    auto disc = [](const QPoly& f) {
        Rational A = f.coefficient_of({4, 0}), B = f.coefficient_of({2, 0}), C = f.coefficient_of({0, 0});
        return Rational(B * B - 4 * A * C);
    };
    CHECK(disc(fs[2]) == Rational(105) * 17625 * 17625);
    CHECK(disc(fs[3]) == Rational(105) * 129357 * 129357);
    // cases 1 and 2 sit on 24c + 25a = 0, where F3 restricts to a multiple of both
    QPoly line = Derivation::printed_f3(d.ac_vars()).substitute("c", d.ac("a") * QPoly(d.ac_vars(), frac(-25, 24)));
    CHECK(exact_divide(line, fs[0]).has_value());
    CHECK(exact_divide(line, fs[1]).has_value());
    CHECK_FALSE(exact_divide(line, fs[2]).has_value());
}

TEST_CASE("stage digests are stable and stop_after is honoured") {
    DeriveOptions o;
    o.stop_after = "a2";
    auto r1 = run_derivation(o), r2 = run_derivation(o);
    REQUIRE(r1.stages.size() == 4);
    CHECK(r1.stages.back().name == "a2");
    CHECK(r1.to_json().dump() == r2.to_json().dump());
    CHECK_FALSE(r1.complete);
    CHECK(r1.exit_code() == 0);
    o.stop_after = "no_such_stage";
    CHECK_THROWS(run_derivation(o));
}

#include "doctest.h"

#include <random>

#include "belyi/multipoly.hpp"
#include "belyi/parse.hpp"
#include "belyi/series.hpp"

using namespace belyi;

namespace {

struct Sym {
    VarList vars = make_vars({"a", "b", "c"});
    QPoly a = QPoly::variable(vars, "a");
    QPoly b = QPoly::variable(vars, "b");
    QPoly c = QPoly::variable(vars, "c");
    QPoly k(long n, long d = 1) const { return QPoly(vars, Rational(n, d)); }
    UPoly<QPoly> f() const { return UPoly<QPoly>{k(1), a, b, c, k(1)}; }
};

}  // namespace

TEST_CASE("series_sqrt of the quartic at x = 0") {
    Sym s;
    auto g = LaurentSeries<QPoly>::from_poly(s.f(), 3, s.k(1));
    auto y = series_sqrt(g, s.k(1));
    CHECK(y.coefficient(0) == s.k(1));
    CHECK(y.coefficient(1) == s.a.scaled(Rational(1, 2)));
    CHECK(y.coefficient(2) == s.b.scaled(Rational(1, 2)) - (s.a * s.a).scaled(Rational(1, 8)));
    CHECK_THROWS_AS(y.coefficient(3), PrecisionError);
}

TEST_CASE("series_sqrt basics") {
    auto one = LaurentSeries<Rational>::from_poly(UPoly<Rational>{Rational(1)}, 8, Rational(1));
    auto r = series_sqrt(one);
    CHECK(r.coefficient(0) == 1);
    for (int k = 1; k < 8; ++k) CHECK(r.coefficient(k) == 0);
    auto s = LaurentSeries<Rational>::from_poly(UPoly<Rational>{Rational(1), Rational(1)}, 12, Rational(1));
    auto q = series_sqrt(s);
    auto back = q * q;
    CHECK(back.order() == 12);
    CHECK(back.coefficient(0) == 1);
    CHECK(back.coefficient(1) == 1);
    for (int k = 2; k < 12; ++k) CHECK(back.coefficient(k) == 0);
    auto odd = LaurentSeries<Rational>::monomial(Rational(1), 1, 5);
    CHECK_THROWS_AS(series_sqrt(odd), ArithmeticError);
    auto two = LaurentSeries<Rational>::monomial(Rational(2), 0, 5);
    CHECK_THROWS_AS(series_sqrt(two), ArithmeticError);
}

TEST_CASE("property: series_sqrt squared recovers the input") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> co(-20, 20);
    for (int i = 0; i < 50; ++i) {
        int v = 2 * (co(rng) % 3);
        std::vector<Rational> cs{Rational(co(rng) % 2 == 0 ? 4 : 9, co(rng) % 2 == 0 ? 1 : 25)};
        for (int k = 0; k < 6; ++k) cs.push_back(frac(co(rng), 1 + std::abs(co(rng))));
        LaurentSeries<Rational> s(v, cs, v + 10, Rational(1));
        auto r = series_sqrt(s);
        auto sq = r * r;
        CHECK(sq.order() >= s.order());
        for (int k = v; k < s.order(); ++k) CHECK(sq.coefficient(k) == s.coefficient(k));
    }
}

TEST_CASE("expand_y at the place C2 of the symbolic model") {
    Sym s;
    QPoly bsub = (s.a * s.a).scaled(Rational(1, 4)) - s.k(25, 12);
    UPoly<QPoly> f{s.k(1), s.a, bsub, s.c, s.k(1)};
    auto y = expand_y(f, Place<QPoly>::at_infinity(PlaceKind::InfinityMinus, s.k(1)), 4);
    // x^3 y = sum y_k x^(3-k); the x^3 coefficient is y_0 (t^0 term of y).
    CHECK(y.valuation() == -2);
    CHECK(y.coefficient(-2) == s.k(-1));
    CHECK(y.coefficient(0) == s.k(25, 24) - (s.a * s.a).scaled(Rational(1, 8)) + (s.c * s.c).scaled(Rational(1, 8)));
    auto yp = expand_y(f, Place<QPoly>::at_infinity(PlaceKind::InfinityPlus, s.k(1)), 4);
    CHECK(yp.coefficient(-2) == s.k(1));
}

TEST_CASE("property: expand_y squares to f at every place kind") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> co(-9, 9);
    for (int i = 0; i < 30; ++i) {
        UPoly<Rational> quart{Rational(1), Rational(co(rng)), Rational(co(rng)), Rational(co(rng)), Rational(1)};
        UPoly<Rational> cub{Rational(1), Rational(co(rng)), Rational(co(rng)), Rational(4)};
        struct Case {
            UPoly<Rational> f;
            Place<Rational> p;
        };
        std::vector<Case> cases{
            {quart, Place<Rational>::finite(Rational(0), Rational(1))},
            {quart, Place<Rational>::at_infinity(PlaceKind::InfinityPlus, Rational(1))},
            {quart, Place<Rational>::at_infinity(PlaceKind::InfinityMinus, Rational(1))},
            {cub, Place<Rational>::at_infinity(PlaceKind::InfinityRamified, Rational(1))},
            {cub, Place<Rational>::finite(Rational(0), Rational(-1))},
        };
        for (const auto& cs : cases) {
            int order = 8;
            auto y = expand_y(cs.f, cs.p, order);
            auto x = x_series(cs.p, order + 10, Rational(1));
            auto fx = LaurentSeries<Rational>::zero(order + 10, Rational(1));
            for (int k = cs.f.degree(); k >= 0; --k)
                fx = fx * x + LaurentSeries<Rational>::monomial(cs.f.coeff(k), 0, order + 10);
            auto diff = y * y - fx;
            CHECK(diff.is_zero_series());
            CHECK(diff.order() >= order + y.valuation());
        }
        // the two branches at infinity are negatives of each other
        auto yp = expand_y(quart, Place<Rational>::at_infinity(PlaceKind::InfinityPlus, Rational(1)), 6);
        auto ym = expand_y(quart, Place<Rational>::at_infinity(PlaceKind::InfinityMinus, Rational(1)), 6);
        CHECK((yp + ym).is_zero_series());
    }
}

TEST_CASE("cubic model over Q(sqrt 105) at its ramified infinite place") {
    QuadExt g(Rational(0), Rational(45), 105);
    VarList xv = make_vars({"x"});
    auto fq = parse_poly("420*x^3 - (119+9*g)*x^2 + 14*(1515-g)*x + 420*(420-g)", xv, {{"g", g}});
    std::vector<QuadExt> cs(4);
    for (const auto& [e, c] : fq.terms()) cs[static_cast<size_t>(e[0])] = c;
    UPoly<QuadExt> f(cs);
    auto y = expand_y(f, Place<QuadExt>::at_infinity(PlaceKind::InfinityRamified, QuadExt(1)), 8, 105);
    CHECK(y.leading() == QuadExt(Rational(0), Rational(2), 105));
    // (y s^3)^2 - s^6 f(1/s^2) vanishes to order 10
    auto ys3 = y.shifted(3);
    std::vector<QuadExt> rev(7, QuadExt(0));
    for (int k = 0; k <= 3; ++k) rev[static_cast<size_t>(6 - 2 * k)] = f.coeff(k);
    LaurentSeries<QuadExt> target(0, rev, 10, QuadExt(1));
    auto d = ys3 * ys3 - target;
    CHECK(d.is_zero_series());
    CHECK(d.order() >= 10);
}

TEST_CASE("coefficient_of on the u-ansatz at A1") {
    VarList vars = make_vars({"a", "b", "c", "p", "q", "r", "s"});
    auto V = [&](const char* n) { return QPoly::variable(vars, n); };
    QPoly one(vars, Rational(1));
    UPoly<QPoly> f{one, V("a"), V("b"), V("c"), one};
    auto y = expand_y(f, Place<QPoly>::finite(QPoly(vars, Rational(0)), one), 3);
    auto xs = LaurentSeries<QPoly>::from_poly(UPoly<QPoly>{V("p"), V("q"), V("r")}, 3, one);
    auto u = xs + y * LaurentSeries<QPoly>::monomial(V("s"), 0, 3);
    CHECK(coefficient_of(u, 0) == V("p") + V("s"));
    CHECK(coefficient_of(u, 1) == V("q") + (V("s") * V("a")).scaled(Rational(1, 2)));
}

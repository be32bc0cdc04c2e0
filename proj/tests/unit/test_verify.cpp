#include "doctest.h"

#include "belyi/verify.hpp"

using namespace belyi;

namespace {

QuadExt gamma(int sign) { return QuadExt(Rational(0), Rational(45 * sign), 105); }

// Shifts every x-polynomial in a claim by x -> x + r.
ParsedClaim shifted(const ParsedClaim& c, const Rational& r) {
    QuadExt s(r);
    auto sh = [&](const QRF& q) { return QRF(q.num().shift(s), q.den().shift(s)); };
    return {CurveModel<QuadExt>(c.model.f.shift(s), c.model.d), sh(c.n0), sh(c.n1)};
}

}  // namespace

TEST_CASE("theorem claims parse to the printed model") {
    for (int sign : {1, -1}) {
        auto pc = parse_claim(theorem_claim(sign));
        QuadExt g = gamma(sign);
        CHECK(pc.model.f.degree() == 3);
        CHECK(pc.model.f.coeff(3, QuadExt(0)) == QuadExt(420));
        CHECK(pc.model.f.coeff(2, QuadExt(0)) == -(QuadExt(119) + QuadExt(9) * g));
        CHECK(pc.model.f.coeff(1, QuadExt(0)) == QuadExt(14) * (QuadExt(1515) - g));
        CHECK(pc.model.f.coeff(0, QuadExt(0)) == QuadExt(420) * (QuadExt(420) - g));
        // denominator 64x - 105 + gamma, made monic
        CHECK(pc.n0.den().coeff(0, QuadExt(0)) == (g - QuadExt(105)) / QuadExt(64));
    }
}

TEST_CASE("reconstruct round-trips the norms") {
    for (int sign : {1, -1}) {
        auto pc = parse_claim(theorem_claim(sign));
        auto rec = reconstruct(pc);
        // the printed pair needs the twist y^2 = c f: c has negative norm
        CHECK(rec.twist.norm() < 0);
        // norms are computed on the model in X = L x; map them back with X -> L x
        UPoly<QuadExt> back{QuadExt(0), rec.x_scale};
        auto to_claim = [&](const QRF& r) { return QRF(r.num().compose(back), r.den().compose(back)); };
        auto [n0, n1] = norms(rec.beta);
        CHECK(to_claim(n0) == pc.n0);
        CHECK(to_claim(n1) == pc.n1);
        CHECK(to_claim(rec.beta.P()) == (pc.n0 - pc.n1 + QRF::constant(QuadExt(1))) / QRF::constant(QuadExt(2)));
        // the model is the twist, rescaled to be monic
        CHECK(rec.beta.model().f.lc() == QuadExt(1));
    }
}

TEST_CASE("reconstruct without a twist") {
    // beta = x on y^2 = x^3 + 1: n0 = x^2, n1 = (x - 1)^2
    BelyiClaim c;
    c.f = "x^3 + 1";
    c.n0_num = "x^2";
    c.n1_num = "(x-1)^2";
    auto rec = reconstruct(parse_claim(c));
    CHECK(rec.twist == QuadExt(1));
    CHECK(rec.beta.Q().is_zero_rf());
    CHECK(rec.beta.P() == QRF(UPoly<QuadExt>{QuadExt(0), QuadExt(1)}));
}

TEST_CASE("certificate for both signs of gamma") {
    for (int sign : {1, -1}) {
        auto cert = certify(theorem_claim(sign));
        INFO(cert.to_json().dump(1));
        CHECK(cert.passed());
        CHECK(cert.rh.identity == "(4+2)+(1+1+1+1)+(6+0) = 16 = 2*8 + 0");
        REQUIRE(cert.residue_c1);
        CHECK(*cert.residue_c1 == QuadExt(-49));
        CHECK(*cert.residue_c2 == QuadExt(-1));
        CHECK(*cert.residue_a1 == QuadExt(-25));
        CHECK(*cert.residue_a2 == QuadExt(-9));
        // C2 sits over the root of 64x - 105 + gamma
        CHECK(*cert.x_c2 == (QuadExt(105) - gamma(sign)) / QuadExt(64));
        // the order-5 zero is over x = 3, the order-3 zero over x = -5
        CHECK(*cert.x_a1 == QuadExt(3));
        CHECK(*cert.x_a2 == QuadExt(-5));
    }
}

TEST_CASE("property: certification survives x -> x + r") {
    for (int sign : {1, -1})
        for (long r : {1L, -7L}) {
            auto cert = certify(shifted(parse_claim(theorem_claim(sign)), Rational(r)));
            CHECK(cert.passed());
        }
}

TEST_CASE("corrupted claims fail at the intended stage") {
    SUBCASE("perturbed coefficient") {
        auto c = theorem_claim(1);
        c.n0_num = c.n0_num + " + 1";
        auto cert = certify(c);
        CHECK_FALSE(cert.passed());
        CHECK(cert.first_failure() == "reconstruct");
    }
    SUBCASE("swapped n0 and n1") {
        auto c = theorem_claim(1);
        std::swap(c.n0_num, c.n1_num);
        std::swap(c.n0_den, c.n1_den);
        auto cert = certify(c);
        CHECK_FALSE(cert.passed());
        CHECK(cert.first_failure() == "divisor(beta)");
    }
    SUBCASE("wrong gamma pairing") {
        auto c = theorem_claim(1);
        c.f = "420*x^3 - (119-9*45*sqrt(105))*x^2 + 14*(1515+45*sqrt(105))*x + 420*(420+45*sqrt(105))";
        auto cert = certify(c);
        CHECK_FALSE(cert.passed());
        CHECK(cert.first_failure() == "reconstruct");
    }
    SUBCASE("degenerate constant beta") {
        BelyiClaim c;
        c.f = "x^3 + 1";
        c.n0_num = "9";
        c.n1_num = "4";
        auto cert = certify(c);
        CHECK_FALSE(cert.passed());
        CHECK(cert.first_failure() == "nonconstant");
    }
}

TEST_CASE("divisor structure rejects beta = x") {
    CurveModel<QuadExt> m(UPoly<QuadExt>{QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1)}, 105);
    Divisor<QuadExt> d0, d1;
    auto checks = check_divisor_structure(QElement::x(m), d0, d1);
    CHECK_FALSE(checks[0].passed);
}

TEST_CASE("rh_certificate reports a shortfall for a double cover") {
    // beta = x on y^2 = x^3 + 1 viewed with poles {-2}: 1 + 1 + 1 < 2*2 + 0
    CurveModel<QuadExt> m(UPoly<QuadExt>{QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1)}, 105);
    auto x = QElement::x(m);
    auto r = rh_certificate(divisor_of(x), divisor_of(x - QElement::constant(m, QuadExt(1))));
    CHECK(r.degree == 2);
    CHECK_FALSE(r.saturated);
}

TEST_CASE("claim JSON round trip") {
    auto c = theorem_claim(-1);
    auto back = claim_from_json(claim_to_json(c));
    CHECK(back.f == c.f);
    CHECK(back.n1_num == c.n1_num);
    CHECK(back.bindings == c.bindings);
    nlohmann::json j = {{"gamma", "plus"}, {"f", "x^3+1"}, {"n0", "x"}, {"n1", {{"num", "x-1"}}}};
    auto d = claim_from_json(j);
    CHECK(d.bindings.at("g") == "45*sqrt(105)");
    CHECK(d.n1_den == "1");
    CHECK_THROWS(claim_from_json(nlohmann::json{{"gamma", "zero"}, {"f", "x"}, {"n0", "1"}, {"n1", "1"}}));
}

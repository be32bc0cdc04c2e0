#include "doctest.h"

#include <random>

#include "belyi/scalars.hpp"

using namespace belyi;

namespace {

// Newton iteration on integers, independent of the GMP square root.
Integer newton_isqrt(const Integer& n) {
    if (n < 2) return n;
    Integer x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

// Schoolbook long division of p/q into `digits` decimal digits after the point.
std::string long_division(long p, long q, int digits) {
    std::string out = std::to_string(p / q) + ".";
    long r = p % q;
    for (int i = 0; i < digits; ++i) {
        r *= 10;
        out += static_cast<char>('0' + r / q);
        r %= q;
    }
    return out;
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 100000);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("quadratic field multiplication") {
    QuadExt g(Rational(0), Rational(45), 105);
    CHECK(quad_mul(g, g) == QuadExt(Rational(212625)));
    QuadExt s = QuadExt::sqrt_of(105);
    CHECK(s * s.conj() == QuadExt(Rational(-105)));
    CHECK(s.norm() == -105);
    CHECK_THROWS_AS(quad_mul(QuadExt::sqrt_of(2), QuadExt::sqrt_of(5)), ArithmeticError);
}

TEST_CASE("39*gamma + 17983 exact and float paths agree") {
    QuadExt g(Rational(0), Rational(45), 105);
    QuadExt v = QuadExt(39) * g + QuadExt(17983);
    CHECK(v == QuadExt(Rational(17983), Rational(1755), 105));
    BigFloat exact = to_float(v, 200);
    BigFloat fl = BigFloat(39.0, 200) * (BigFloat(45.0, 200) * sqrt(BigFloat(105.0, 200))) + BigFloat(17983.0, 200);
    CHECK(abs(exact - fl) < BigFloat(1e-50, 200));
    CHECK(abs(exact - BigFloat(35966.0, 200)) < BigFloat(1.0, 200));
}

TEST_CASE("integer_sqrt_exact") {
    CHECK(*integer_sqrt_exact(Integer(0)) == 0);
    Integer n("16733233449");
    CHECK(newton_isqrt(n) == 129357);
    CHECK(*integer_sqrt_exact(n) == 129357);
    CHECK_FALSE(integer_sqrt_exact(Integer(2)).has_value());
    CHECK_THROWS_AS(integer_sqrt_exact(Integer(-4)), ArithmeticError);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Integer s = 0;
        for (int k = 0; k < 3; ++k) s = s * Integer(1000000000) + Integer(static_cast<unsigned long>(rng() % 1000000000));
        CHECK(*integer_sqrt_exact(s * s) == s);
        CHECK(newton_isqrt(s * s) == s);
        if (s > 0) CHECK_FALSE(integer_sqrt_exact(s * s + 1).has_value());
    }
}

TEST_CASE("rational_to_float") {
    CHECK(rational_to_float(Rational(1, 2)).to_string(5).rfind("0.5", 0) == 0);
    CHECK(rational_to_float(Rational(25, 24), 128).to_string(12) == "1.04166666667");
    std::string oracle = long_division(49, 1152, 30);
    std::string got = rational_to_float(Rational(49, 1152), 256).to_string(40);
    CHECK(got.substr(0, 25) == oracle.substr(0, 25));
}

TEST_CASE("rational field axioms on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        if (!is_zero(b)) CHECK((a / b) * b == a);
        Rational p = a * b + c;
        CHECK(gcd(p.get_num(), p.get_den()) == 1);
        CHECK(p.get_den() > 0);
    }
}

TEST_CASE("quadratic norm is multiplicative") {
    std::mt19937_64 rng(13);
    for (long d : {2L, 5L, 105L}) {
        for (int i = 0; i < 100; ++i) {
            QuadExt z(random_rational(rng), random_rational(rng), d);
            QuadExt w(random_rational(rng), random_rational(rng), d);
            CHECK((z * w).norm() == z.norm() * w.norm());
            CHECK(z * z.conj() == QuadExt(z.norm()));
            if (!is_zero(w)) CHECK((z / w) * w == z);
        }
    }
}

TEST_CASE("quadratic square roots") {
    QuadExt four_twenty(Rational(420), Rational(0), 105);
    auto r = four_twenty.sqrt();
    REQUIRE(r.has_value());
    CHECK(*r == QuadExt(Rational(0), Rational(2), 105));
    // an untagged rational only has rational square roots
    CHECK_FALSE(QuadExt(Rational(420)).sqrt().has_value());
    QuadExt z(Rational(3), Rational(2), 5);
    auto zz = (z * z).sqrt();
    REQUIRE(zz.has_value());
    CHECK(*zz * *zz == z * z);
    CHECK_FALSE(QuadExt(Rational(0), Rational(1), 5).sqrt().has_value());
    CHECK(QuadExt(Rational(1), Rational(1, 3), 105).to_string() == "1 + 1/3*sqrt(105)");
}

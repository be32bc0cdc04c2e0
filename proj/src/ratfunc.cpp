#include "belyi/ratfunc.hpp"

namespace belyi {

RationalFunction::RationalFunction(QPoly num, QPoly den, bool reduce_now) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero_poly()) throw ArithmeticError("rational function with zero denominator");
    if (reduce_now) reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero_poly()) {
        den_ = QPoly(den_.vars(), Rational(1));
        return;
    }
    QPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
    }
    Rational c = rational_content(den_);
    num_ = num_.scaled(Rational(1) / c);
    den_ = den_.scaled(Rational(1) / c);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero_rf()) throw ArithmeticError("rational function division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace belyi

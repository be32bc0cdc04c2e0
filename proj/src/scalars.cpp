#include "belyi/scalars.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace belyi {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (r.get_den() == 0) throw ArithmeticError("zero denominator in " + text);
    r.canonicalize();
    return r;
}

std::optional<Integer> integer_sqrt_exact(const Integer& n) {
    if (sgn(n) < 0) throw ArithmeticError("integer_sqrt_exact: negative input");
    Integer s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    if (s * s == n) return s;
    return std::nullopt;
}

std::optional<Rational> rational_sqrt_exact(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    auto n = integer_sqrt_exact(r.get_num());
    auto d = integer_sqrt_exact(r.get_den());
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

bool is_squarefree(long d) {
    if (d <= 1) return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

// --- QuadExt ---------------------------------------------------------------

QuadExt::QuadExt(Rational rat, Rational surd, long d) : rat_(std::move(rat)), surd_(std::move(surd)), d_(d) {
    if (d != 0 && !is_squarefree(d)) throw ArithmeticError("QuadExt: d must be a square-free integer > 1");
    if (d == 0 && sgn(surd_) != 0) throw ArithmeticError("QuadExt: surd part without a field tag");
}

long QuadExt::join(long d1, long d2) {
    if (d1 == 0) return d2;
    if (d2 == 0 || d1 == d2) return d1;
    throw ArithmeticError("QuadExt: mismatched fields sqrt(" + std::to_string(d1) + ") and sqrt(" +
                          std::to_string(d2) + ")");
}

QuadExt QuadExt::conj() const {
    QuadExt r = *this;
    r.surd_ = -r.surd_;
    return r;
}

Rational QuadExt::norm() const { return rat_ * rat_ - Rational(d_) * surd_ * surd_; }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    d_ = join(d_, o.d_);
    rat_ += o.rat_;
    surd_ += o.surd_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    d_ = join(d_, o.d_);
    rat_ -= o.rat_;
    surd_ -= o.surd_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    d_ = join(d_, o.d_);
    Rational r = rat_ * o.rat_ + Rational(d_) * surd_ * o.surd_;
    Rational s = rat_ * o.surd_ + surd_ * o.rat_;
    rat_ = std::move(r);
    surd_ = std::move(s);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    Rational n = o.norm();
    if (sgn(n) == 0) throw ArithmeticError("QuadExt: division by zero");
    *this *= o.conj();
    rat_ /= n;
    surd_ /= n;
    return *this;
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    r.rat_ = -r.rat_;
    r.surd_ = -r.surd_;
    return r;
}

std::optional<QuadExt> QuadExt::sqrt() const {
    if (is_rational()) {
        if (auto s = rational_sqrt_exact(rat_)) return QuadExt(*s, Rational(0), d_);
        if (d_ != 0) {
            // rat = d * v^2  ->  sqrt = v sqrt(d)
            if (auto v = rational_sqrt_exact(rat_ / d_)) return QuadExt(Rational(0), *v, d_);
        }
        return std::nullopt;
    }
    // (u + v sqrt d)^2 = (u^2 + d v^2) + 2uv sqrt d
    auto m = rational_sqrt_exact(norm());
    if (!m) return std::nullopt;
    for (int sign : {1, -1}) {
        Rational u2 = (rat_ + sign * *m) / 2;
        auto u = rational_sqrt_exact(u2);
        if (!u || sgn(*u) == 0) continue;
        Rational v = surd_ / (2 * *u);
        QuadExt cand(*u, v, d_);
        if (cand * cand == *this) return cand;
    }
    return std::nullopt;
}

std::string QuadExt::to_string() const {
    if (sgn(surd_) == 0) return belyi::to_string(rat_);
    std::string s = belyi::to_string(abs(surd_)) + "*sqrt(" + std::to_string(d_) + ")";
    if (sgn(rat_) == 0) return (sgn(surd_) < 0 ? "-" : "") + s;
    return belyi::to_string(rat_) + (sgn(surd_) < 0 ? " - " : " + ") + s;
}

QuadExt quad_mul(const QuadExt& z, const QuadExt& w) { return z * w; }

// --- BigFloat --------------------------------------------------------------

BigFloat::BigFloat(long precision_bits) {
    mpfr_init2(v_, precision_bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, long precision_bits) {
    mpfr_init2(v_, precision_bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& r, long precision_bits) {
    mpfr_init2(v_, precision_bits);
    mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& z, long precision_bits) {
    mpfr_init2(v_, precision_bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_string(const std::string& s, long precision_bits) {
    BigFloat r(precision_bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw std::invalid_argument("not a decimal: " + s);
    return r;
}

namespace {
void widen(mpfr_ptr v, mpfr_srcptr o) {
    if (mpfr_get_prec(o) > mpfr_get_prec(v)) mpfr_prec_round(v, mpfr_get_prec(o), MPFR_RNDN);
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

std::string BigFloat::to_string(int digits) const {
    if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103));
    if (mpfr_zero_p(v_)) return "0";
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return buf.data();
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}
BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
    return r;
}
BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
}
BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
}
BigFloat cos(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_cos(r.v_, x.v_, MPFR_RNDN);
    return r;
}
BigFloat sin(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sin(r.v_, x.v_, MPFR_RNDN);
    return r;
}
BigFloat pow2(const BigFloat& x, long e) {
    BigFloat r(x);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

BigFloat rational_to_float(const Rational& r, long precision_bits) {
    if (precision_bits < 2) throw std::invalid_argument("precision too small");
    return BigFloat(r, precision_bits);
}

BigFloat ten_pow(long e, long precision_bits) {
    BigFloat r(precision_bits);
    mpfr_set_ui(r.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

// --- Complex ---------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}
Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}
Complex& Complex::operator*=(const Complex& o) {
    BigFloat r = re * o.re - im * o.im;
    BigFloat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}
Complex& Complex::operator/=(const Complex& o) {
    BigFloat den = o.re * o.re + o.im * o.im;
    if (den.is_zero()) throw ArithmeticError("Complex: division by zero");
    BigFloat r = (re * o.re + im * o.im) / den;
    BigFloat i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string Complex::to_string(int digits) const {
    std::string s = re.to_string(digits);
    if (im.is_zero()) return s;
    std::string i = abs(im).to_string(digits);
    return s + (im.sign() < 0 ? " - " : " + ") + i + "*I";
}

BigFloat abs(const Complex& z) { return hypot(z.re, z.im); }

Complex sqrt(const Complex& z) {
    // principal branch
    BigFloat m = abs(z);
    if (m.is_zero()) return z;
    BigFloat half(0.5, z.precision());
    BigFloat r = sqrt((m + z.re) * half);
    BigFloat i = sqrt((m - z.re) * half);
    if (z.im.sign() < 0) i = -i;
    return {r, i};
}

Complex to_complex(const Rational& r, long prec) { return {BigFloat(r, prec), BigFloat(prec)}; }

BigFloat to_float(const QuadExt& z, long prec) {
    BigFloat v(z.rat_part(), prec);
    if (!z.is_rational()) v += BigFloat(z.surd_part(), prec) * sqrt(BigFloat(Integer(z.d()), prec));
    return v;
}

Complex to_complex(const QuadExt& z, long prec) { return {to_float(z, prec), BigFloat(prec)}; }

}  // namespace belyi

#pragma once

// Exact and high-precision scalar types: big rationals (GMP), elements of a
// real quadratic field Q(sqrt d), and MPFR-backed floats / complex numbers.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace belyi {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised on arithmetic that has no meaning for the given operands
/// (mismatched field tags, division by zero, negative square roots).
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

std::string to_string(const Integer& z);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

/// Returns s with s*s == n, or nullopt if n is not a perfect square.
/// Throws ArithmeticError for n < 0.
std::optional<Integer> integer_sqrt_exact(const Integer& n);
std::optional<Rational> rational_sqrt_exact(const Rational& r);
bool is_squarefree(long d);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// n/d in canonical form (mpq_class(n, d) does not reduce).
inline Rational frac(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// QuadExt: rat + surd*sqrt(d).
//
// The field tag d travels with the value. d == 0 marks an element that is a
// plain rational and combines with any tag; two nonzero tags must agree.
// ---------------------------------------------------------------------------
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(int v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
    QuadExt(Rational r) : rat_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    QuadExt(Rational rat, Rational surd, long d);

    /// sqrt(d) itself.
    static QuadExt sqrt_of(long d) { return {Rational(0), Rational(1), d}; }

    const Rational& rat_part() const { return rat_; }
    const Rational& surd_part() const { return surd_; }
    /// 0 for untagged rationals.
    long d() const { return d_; }
    bool is_rational() const { return sgn(surd_) == 0; }

    QuadExt conj() const;
    Rational norm() const;
    Rational trace() const { return 2 * rat_; }

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }
    QuadExt operator-() const;

    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.rat_ == b.rat_ && a.surd_ == b.surd_;
    }

    /// Square root inside the same field, if one exists.
    std::optional<QuadExt> sqrt() const;

    /// "p/q" or "p/q + r/s*sqrt(d)".
    std::string to_string() const;

private:
    static long join(long d1, long d2);

    Rational rat_{0};
    Rational surd_{0};
    long d_ = 0;
};

inline bool is_zero(const QuadExt& z) { return sgn(z.rat_part()) == 0 && sgn(z.surd_part()) == 0; }
QuadExt quad_mul(const QuadExt& z, const QuadExt& w);
inline std::string to_string(const QuadExt& z) { return z.to_string(); }

// ---------------------------------------------------------------------------
// BigFloat: RAII wrapper over mpfr_t. Results carry the larger precision of
// the operands; rounding is to nearest.
// ---------------------------------------------------------------------------
inline constexpr long kDefaultPrecisionBits = 128;

class BigFloat {
public:
    BigFloat() : BigFloat(kDefaultPrecisionBits) {}
    explicit BigFloat(long precision_bits);
    BigFloat(double v, long precision_bits = kDefaultPrecisionBits);  // NOLINT
    BigFloat(int v) : BigFloat(static_cast<double>(v)) {}  // NOLINT
    BigFloat(const Rational& r, long precision_bits);
    BigFloat(const Integer& z, long precision_bits);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_string(const std::string& s, long precision_bits);

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    BigFloat operator-() const;

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal rendering with `digits` significant digits.
    std::string to_string(int digits = 0) const;

    friend BigFloat abs(const BigFloat& x);
    friend BigFloat sqrt(const BigFloat& x);
    friend BigFloat hypot(const BigFloat& x, const BigFloat& y);
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x);
    friend BigFloat cos(const BigFloat& x);
    friend BigFloat sin(const BigFloat& x);
    friend BigFloat pow2(const BigFloat& x, long e);  // x * 2^e

private:
    mpfr_t v_;
};

BigFloat rational_to_float(const Rational& r, long precision_bits = kDefaultPrecisionBits);
/// 10^e at the given precision.
BigFloat ten_pow(long e, long precision_bits);

// ---------------------------------------------------------------------------
// Complex numbers over BigFloat, used by the numeric cross-checks.
// ---------------------------------------------------------------------------
struct Complex {
    BigFloat re;
    BigFloat im;

    Complex() : re(0), im(0) {}
    Complex(int v) : re(v), im(0) {}  // NOLINT
    Complex(BigFloat r) : re(std::move(r)), im(0, re.precision()) {}  // NOLINT
    Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    Complex(const Rational& r, long prec) : re(r, prec), im(0, prec) {}

    long precision() const { return std::max(re.precision(), im.precision()); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    Complex operator-() const { return {-re, -im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    Complex conj() const { return {re, -im}; }
    std::string to_string(int digits = 20) const;
};

BigFloat abs(const Complex& z);
Complex sqrt(const Complex& z);
inline bool is_zero(const BigFloat& x) { return x.is_zero(); }
inline bool is_zero(const Complex& z) { return z.re.is_zero() && z.im.is_zero(); }
inline std::string to_string(const BigFloat& x) { return x.to_string(); }
inline std::string to_string(const Complex& z) { return z.to_string(); }

/// Embeds an exact value at the requested precision.
Complex to_complex(const Rational& r, long prec);
/// Uses the positive real square root of d.
Complex to_complex(const QuadExt& z, long prec);
BigFloat to_float(const QuadExt& z, long prec);

}  // namespace belyi

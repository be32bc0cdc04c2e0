#pragma once

// Small customization layer shared by the generic polynomial and series
// templates. A coefficient ring R needs +, -, *, unary -, ==, is_zero(R),
// to_string(R), and zero_like / one_like that produce constants compatible
// with a given element (field tags, variable contexts).

#include <concepts>
#include <optional>
#include <string>

#include "belyi/scalars.hpp"

namespace belyi {

template <class R>
concept Ring = requires(const R& a, const R& b) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { is_zero(a) } -> std::convertible_to<bool>;
};

template <class F>
concept Field = Ring<F> && requires(const F& a, const F& b) {
    { a / b } -> std::convertible_to<F>;
};

template <class R>
R zero_like(const R&) {
    return R(0);
}

template <class R>
R one_like(const R&) {
    return R(1);
}

template <class R>
R from_int_like(const R& like, long v) {
    return one_like(like) * R(static_cast<int>(v));
}

template <>
inline Rational from_int_like<Rational>(const Rational&, long v) {
    return Rational(v);
}

template <>
inline Complex zero_like<Complex>(const Complex& z) {
    long p = z.precision();
    return {BigFloat(p), BigFloat(p)};
}

template <>
inline Complex one_like<Complex>(const Complex& z) {
    long p = z.precision();
    return {BigFloat(1.0, p), BigFloat(p)};
}

template <>
inline Complex from_int_like<Complex>(const Complex& z, long v) {
    long p = z.precision();
    return {BigFloat(static_cast<double>(v), p), BigFloat(p)};
}

/// Division by a small nonzero integer (needed for Taylor and sqrt series).
template <class R>
R divide_by_int(const R& x, long n) {
    if constexpr (std::same_as<R, Rational>) {
        return x / Rational(n);
    } else if constexpr (std::same_as<R, QuadExt>) {
        return x / QuadExt(Rational(n));
    } else if constexpr (std::same_as<R, Complex>) {
        return x / from_int_like(x, n);
    } else {
        return x.divide_by_int(n);
    }
}

/// Square root inside the ring, when it exists there.
inline std::optional<Rational> try_sqrt(const Rational& r) { return rational_sqrt_exact(r); }
inline std::optional<QuadExt> try_sqrt(const QuadExt& z) { return z.sqrt(); }
inline std::optional<Complex> try_sqrt(const Complex& z) { return sqrt(z); }

/// Multiplicative inverse when x is a unit of its ring.
inline std::optional<Rational> invert_unit(const Rational& x) {
    if (is_zero(x)) return std::nullopt;
    return Rational(1) / x;
}
inline std::optional<QuadExt> invert_unit(const QuadExt& x) {
    if (is_zero(x)) return std::nullopt;
    return QuadExt(1) / x;
}
inline std::optional<Complex> invert_unit(const Complex& x) {
    if (is_zero(x)) return std::nullopt;
    return one_like(x) / x;
}

/// Square root of x read in Q(sqrt d): untagged rationals pick up the tag.
inline std::optional<QuadExt> sqrt_in_field(const QuadExt& x, long d) {
    if (d == 0 || x.d() != 0) return x.sqrt();
    return QuadExt(x.rat_part(), Rational(0), d).sqrt();
}
inline std::optional<Rational> sqrt_in_field(const Rational& x, long) { return rational_sqrt_exact(x); }
inline std::optional<Complex> sqrt_in_field(const Complex& x, long) { return sqrt(x); }

}  // namespace belyi

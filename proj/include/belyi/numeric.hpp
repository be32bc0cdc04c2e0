#pragma once

// Complex polynomial root finding (Aberth-Ehrlich) and small helpers for the
// numeric cross-checks.

#include <vector>

#include "belyi/multipoly.hpp"
#include "belyi/scalars.hpp"
#include "belyi/upoly.hpp"

namespace belyi {

using CPoly = UPoly<Complex>;

/// All complex roots of p (with multiplicity), working at `prec` bits.
/// Converges linearly near multiple roots, so callers wanting d digits at a
/// root of multiplicity m should give roughly m*d digits of precision.
std::vector<Complex> polynomial_roots(const CPoly& p, long prec, int max_iter = 4000);

/// Embeds an exact polynomial.
CPoly to_cpoly(const UPoly<Rational>& p, long prec);
CPoly to_cpoly(const UPoly<QuadExt>& p, long prec);

/// Evaluates a polynomial over Q at complex values of its variables
/// (values indexed like the variable list).
Complex eval_complex(const QPoly& p, const std::vector<Complex>& values, long prec);

/// Drops leading coefficients smaller than rel * max|coefficient|.
CPoly trim_small_leading(const CPoly& p, const BigFloat& rel);

BigFloat max_abs_coeff(const CPoly& p);

}  // namespace belyi

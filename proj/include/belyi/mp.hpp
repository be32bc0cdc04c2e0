#pragma once

// The Mulase-Penkava quadratic differential (d beta)^2 / (beta (1 - beta)),
// held as coeff * omega^2 with omega = dx / y. The 1/(4 pi^2) prefactor is
// dropped everywhere, so residues are in units of 1/(4 pi^2).

#include <stdexcept>

#include "belyi/curve.hpp"
#include "belyi/series.hpp"

namespace belyi {

template <Field F>
struct QuadDifferential {
    FunctionFieldElement<F> coeff;
};

template <Field F>
QuadDifferential<F> mp(const FunctionFieldElement<F>& beta) {
    if (beta.is_constant()) throw std::invalid_argument("mp: constant function");
    auto db = beta.d_over_omega();
    auto one = FunctionFieldElement<F>::constant(beta.model(), one_like(beta.model().f.lc()));
    return {db * db / (beta * (one - beta))};
}

/// Coefficient of t^-2 in the local form h (dx/dt)^2 / y^2 dt^2 of h omega^2,
/// from series of h and y at the place.
template <class R>
R quadratic_residue(const LaurentSeries<R>& h, const LaurentSeries<R>& y, const Place<R>& pl, int order) {
    const R& like = y.like();
    auto dx = dx_series(pl, order, like);
    auto local = h * dx * dx * (y * y).inverse();
    if (local.valuation() < -2) throw std::domain_error("residue: pole of order > 2");
    return local.coefficient(-2);
}

/// Quadratic residue of qd at a place that is at most a double pole.
template <Field F>
F residue_at(const QuadDifferential<F>& qd, const Place<F>& pl) {
    if (pl.kind == PlaceKind::Finite && is_zero(pl.y0))
        throw std::invalid_argument("residue_at: ramification points are not supported");
    const auto& m = qd.coeff.model();
    int order = 12;
    int v = order_at(qd.coeff, pl);
    // h (dx/dt)^2 / y^2 needs the t^-2 term, so expand h a few terms past v.
    int horder = std::max(v + 6, order);
    auto h = qd.coeff.series_at(pl, horder);
    auto y = expand_y(m.f, pl, horder + 8, m.d);
    return quadratic_residue(h, y, pl, horder + 8);
}

/// Checks mp(1/beta) * (-beta) == mp(beta) exactly.
template <Field F>
bool mp_inverse_identity(const FunctionFieldElement<F>& beta) {
    auto lhs = mp(beta.inverse()).coeff * (-beta);
    return lhs == mp(beta).coeff;
}

/// -coeff(mp(beta)) / coeff(mp(1/beta)), which is beta itself.
template <Field F>
FunctionFieldElement<F> recover_beta(const QuadDifferential<F>& mp_b, const QuadDifferential<F>& mp_binv) {
    if (mp_binv.coeff.is_zero_element() || mp_b.coeff.is_zero_element()) throw ArithmeticError("recover_beta: zero differential");
    return -(mp_b.coeff / mp_binv.coeff);
}

}  // namespace belyi

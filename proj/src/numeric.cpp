#include "belyi/numeric.hpp"

#include <algorithm>

#include "belyi/linalg.hpp"

namespace belyi {

namespace {

Complex cplx(double re, double im, long prec) { return {BigFloat(re, prec), BigFloat(im, prec)}; }

// Cauchy-style radius bound 1 + max |a_k / a_n|.
BigFloat root_radius(const CPoly& p, long prec) {
    BigFloat lead = abs(p.lc());
    BigFloat m(0.0, prec);
    for (int k = 0; k < p.degree(); ++k) {
        BigFloat r = abs(p.coeff(k)) / lead;
        if (r > m) m = r;
    }
    return m + BigFloat(1.0, prec);
}

}  // namespace

std::vector<Complex> polynomial_roots(const CPoly& p_in, long prec, int max_iter) {
    CPoly p = p_in.map([prec](const Complex& z) { return Complex{BigFloat(z.re), BigFloat(z.im)} * cplx(1, 0, prec); });
    int n = p.degree();
    if (n < 1) return {};
    // peel off roots at zero exactly
    std::vector<Complex> out;
    int low = 0;
    while (is_zero(p.coeff(low))) ++low;
    for (int i = 0; i < low; ++i) out.push_back(cplx(0, 0, prec));
    if (low) p = CPoly(std::vector<Complex>(p.coeffs().begin() + low, p.coeffs().end()));
    n = p.degree();
    if (n < 1) return out;
    CPoly dp = p.derivative();
    BigFloat radius = root_radius(p, prec);
    // Start on a circle, with an irrational angular offset to avoid symmetry.
    std::vector<Complex> z;
    BigFloat twopi = BigFloat(6.283185307179586, prec);
    for (int k = 0; k < n; ++k) {
        BigFloat ang = twopi * BigFloat(static_cast<double>(k) / n + 0.4, prec);
        BigFloat rr = radius * BigFloat(0.5 + 0.5 * (k % 2), prec);
        z.push_back({rr * cos(ang), rr * sin(ang)});
    }
    auto ev = [](const CPoly& q, const Complex& x) { return q.eval(x, [](const Complex& c) { return c; }); };
    BigFloat eps = pow2(BigFloat(1.0, prec), -(prec - 8));
    std::vector<bool> done(static_cast<size_t>(n), false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[static_cast<size_t>(i)]) continue;
            Complex pv = ev(p, z[static_cast<size_t>(i)]);
            if (is_zero(pv)) {
                done[static_cast<size_t>(i)] = true;
                continue;
            }
            Complex ratio = pv / ev(dp, z[static_cast<size_t>(i)]);
            Complex sum = cplx(0, 0, prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                if (is_zero(diff)) diff = cplx(1e-30, 1e-30, prec);
                sum += cplx(1, 0, prec) / diff;
            }
            Complex step = ratio / (cplx(1, 0, prec) - ratio * sum);
            z[static_cast<size_t>(i)] -= step;
            BigFloat scale = abs(z[static_cast<size_t>(i)]);
            if (scale < BigFloat(1.0, prec)) scale = BigFloat(1.0, prec);
            if (abs(step) <= eps * scale)
                done[static_cast<size_t>(i)] = true;
            else
                all = false;
        }
        if (all) break;
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

CPoly to_cpoly(const UPoly<Rational>& p, long prec) {
    return p.map([prec](const Rational& r) { return to_complex(r, prec); });
}

CPoly to_cpoly(const UPoly<QuadExt>& p, long prec) {
    return p.map([prec](const QuadExt& q) { return to_complex(q, prec); });
}

Complex eval_complex(const QPoly& p, const std::vector<Complex>& values, long prec) {
    Complex zero = to_complex(Rational(0), prec);
    return p.eval<Complex>(values, [prec](const Rational& r) { return to_complex(r, prec); }, zero);
}

CPoly trim_small_leading(const CPoly& p, const BigFloat& rel) {
    BigFloat m = max_abs_coeff(p);
    std::vector<Complex> cs = p.coeffs();
    while (!cs.empty() && abs(cs.back()) <= rel * m) cs.pop_back();
    return CPoly(std::move(cs));
}

BigFloat max_abs_coeff(const CPoly& p) {
    BigFloat m(0.0, p.is_zero_poly() ? kDefaultPrecisionBits : p.lc().precision());
    for (const auto& c : p.coeffs()) {
        BigFloat a = abs(c);
        if (a > m) m = a;
    }
    return m;
}

// --- numeric linear algebra ------------------------------------------------------

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<size_t> echelon(Matrix<Complex>& m, const BigFloat& tol) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t ncols = m.front().size();
    BigFloat big(0.0, m[0][0].precision());
    for (const auto& row : m)
        for (const auto& v : row)
            if (abs(v) > big) big = abs(v);
    BigFloat thresh = tol * big;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < m.size(); ++col) {
        size_t best = row;
        for (size_t i = row + 1; i < m.size(); ++i)
            if (abs(m[i][col]) > abs(m[best][col])) best = i;
        if (abs(m[best][col]) <= thresh) continue;
        std::swap(m[row], m[best]);
        Complex inv = one_like(m[row][col]) / m[row][col];
        for (auto& v : m[row]) v = v * inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row) continue;
            Complex factor = m[i][col];
            for (size_t j = 0; j < ncols; ++j) m[i][j] = m[i][j] - factor * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

size_t numeric_rank(Matrix<Complex> m, const BigFloat& tol) { return echelon(m, tol).size(); }

std::vector<std::vector<Complex>> numeric_nullspace(Matrix<Complex> m, const BigFloat& tol) {
    std::vector<std::vector<Complex>> basis;
    if (m.empty()) return basis;
    size_t ncols = m.front().size();
    auto pivots = echelon(m, tol);
    Complex like = m[0][0];
    for (size_t free = 0; free < ncols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Complex> v(ncols, zero_like(like));
        v[free] = one_like(like);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Complex> numeric_solve(Matrix<Complex> m, std::vector<Complex> b) {
    size_t n = m.size();
    for (size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
    for (size_t col = 0; col < n; ++col) {
        size_t best = col;
        for (size_t i = col + 1; i < n; ++i)
            if (abs(m[i][col]) > abs(m[best][col])) best = i;
        if (is_zero(m[best][col])) throw ArithmeticError("numeric_solve: singular matrix");
        std::swap(m[col], m[best]);
        for (size_t i = col + 1; i < n; ++i) {
            Complex factor = m[i][col] / m[col][col];
            for (size_t j = col; j <= n; ++j) m[i][j] = m[i][j] - factor * m[col][j];
        }
    }
    std::vector<Complex> x(n, zero_like(m[0][0]));
    for (size_t i = n; i-- > 0;) {
        Complex acc = m[i][n];
        for (size_t j = i + 1; j < n; ++j) acc = acc - m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

}  // namespace belyi

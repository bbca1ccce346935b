#pragma once

#include <cmath>

#include "snk/error.hpp"
#include "snk/objective.hpp"

namespace snk {

/// Result of locating one tangency point d_r.
struct TangencyData {
    double r = 0.0;        ///< anchor of the tangent line
    double d = 0.0;        ///< tangency point, second root of g
    double residual = 0.0; ///< |g(d)| at termination
    int iterations = 0;    ///< bisection steps taken
    double tol = 0.0;      ///< requested bracket-width tolerance
};

/// Tangency points for both anchors; d1 < c < d0.
struct Tangency {
    TangencyData d0; ///< anchor r = 0
    TangencyData d1; ///< anchor r = 1
};

/**
 * Tangent-gap function g(x) = f(x) + f'(x) (r - x) - f(r): the height of
 * the tangent line at x over the anchor r, minus the value there. Its
 * roots are x = r and the tangency point d_r on the far side of c.
 */
inline double tangency_g(const ObjectiveSpec& spec, double r, double x) {
    return spec.value(x) + spec.deriv(x) * (r - x) - spec.value(r);
}

/**
 * Locates d_r by pure bisection on the bracket between c and 2c - r.
 *
 * Antisymmetry puts d_r strictly inside that bracket with g of opposite
 * signs at the ends; the sign at the c end equals sign(r - c). Both
 * checks are enforced before iterating. Endpoints are pulled inward by
 * 1e-12 of the bracket width so g is never sampled at the exact
 * endpoints. Iteration stops when the bracket width drops to tol or an
 * iterate satisfies |g| <= 1e-15; the step count never exceeds
 * ceil(log2(width / tol)) + 1.
 */
inline TangencyData compute_d_r(const ObjectiveSpec& spec, double r,
                                double tol = 1e-10) {
    if (!(tol > 0.0)) throw parameter_error("tolerance must be positive");
    if (!(r >= 0.0 && r <= 1.0))
        throw parameter_error("anchor r must lie in [0, 1], got " + detail::fmt(r));
    const double c = spec.center();
    if (r == c)
        throw parameter_error("anchor r coincides with the center; d_r is degenerate");

    double a = c;
    double b = 2.0 * c - r;
    const double width0 = std::abs(b - a);
    const double dir = (b > a) ? 1.0 : -1.0;
    a += dir * 1e-12 * width0;
    b -= dir * 1e-12 * width0;

    const double ga0 = tangency_g(spec, r, a);
    const double gb0 = tangency_g(spec, r, b);
    const double want = (r > c) ? 1.0 : -1.0; // sign of g at the c end
    if (!(ga0 * want > 0.0) || !(gb0 * want < 0.0))
        throw assumption_error(
            "tangency bracket for r = " + detail::fmt(r) +
            " has wrong signs (g(" + detail::fmt(a) + ") = " + detail::fmt(ga0) +
            ", g(" + detail::fmt(b) + ") = " + detail::fmt(gb0) +
            "); objective violates the curvature assumptions");

    TangencyData out;
    out.r = r;
    out.tol = tol;
    double ga = ga0;
    while (std::abs(b - a) > tol) {
        const double mid = 0.5 * (a + b);
        const double gm = tangency_g(spec, r, mid);
        ++out.iterations;
        if (std::abs(gm) <= 1e-15) {
            out.d = mid;
            out.residual = std::abs(gm);
            return out;
        }
        if ((gm > 0.0) == (ga > 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    out.d = 0.5 * (a + b);
    out.residual = std::abs(tangency_g(spec, r, out.d));
    return out;
}

/// Computes both tangency points. By antisymmetry d1 = 2c - d0, so the
/// two results must straddle the center: d1 < c < d0.
inline Tangency preprocess(const ObjectiveSpec& spec, double tol = 1e-10) {
    Tangency t;
    t.d0 = compute_d_r(spec, 0.0, tol);
    t.d1 = compute_d_r(spec, 1.0, tol);
    const double c = spec.center();
    if (!(t.d1.d < c && c < t.d0.d))
        throw internal_error("tangency points failed to straddle the center");
    return t;
}

} // namespace snk

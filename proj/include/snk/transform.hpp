#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/objective.hpp"

namespace snk {

/// Affine bijection between the unit box and the box [a, b]^n.
struct AffineMap {
    double a = 0.0;
    double b = 1.0;

    double to_original(double x) const { return a + (b - a) * x; }
    double to_unit(double xp) const { return (xp - a) / (b - a); }
};

/// Unit-box mass plus the coordinate maps produced by normalize().
struct Normalized {
    double M = 0.0;
    AffineMap map;
};

/**
 * Reduces an instance over [a, b]^n with mass M0 to the unit box via
 * x' = a + (b - a) x. Mass transforms as M = (M0 - a n) / (b - a);
 * objective values are unaffected because f is composed with the map.
 */
inline Normalized normalize(double a, double b, int n, double M0) {
    if (!(a < b))
        throw parameter_error("bounds must satisfy a < b, got a = " +
                              detail::fmt(a) + ", b = " + detail::fmt(b));
    if (n < 1) throw parameter_error("n must be a positive integer");
    if (!std::isfinite(M0)) throw parameter_error("M0 must be finite");
    const double lo = a * n;
    const double hi = b * n;
    const double slack = 1e-12 * std::max(1.0, hi - lo);
    if (M0 < lo - slack || M0 > hi + slack)
        throw infeasible_error("M0 outside [a n, b n]: M0 = " + detail::fmt(M0) +
                               ", range [" + detail::fmt(lo) + ", " +
                               detail::fmt(hi) + "]");
    Normalized out;
    out.map = AffineMap{a, b};
    out.M = (M0 - lo) / (b - a);
    return out;
}

/// Builds a unit-box instance from bounded data, remembering the box
/// and original mass for reporting and coordinate expansion.
inline ProblemInstance make_bounded_instance(int n, double M0, double a, double b,
                                             ObjectiveSpec spec) {
    const Normalized norm = normalize(a, b, n, M0);
    return ProblemInstance(n, norm.M, std::move(spec),
                           ProblemInstance::Bounds{a, b, M0});
}

/**
 * Expands a k-space point into the canonical coordinate vector: k0
 * zeros, then ky copies of y, then k1 ones. Counts must be integral.
 */
inline std::vector<double> expand(const KSolution& s, int n) {
    const auto as_count = [n](double v, const char* what) {
        const long r = std::lround(v);
        if (std::abs(v - double(r)) > feas_eps || r < 0 || r > n)
            throw parameter_error(std::string("count ") + what + " = " +
                                  detail::fmt(v) +
                                  " is not an integer in [0, n]");
        return r;
    };
    const long k0 = as_count(s.k0, "k0");
    const long k1 = as_count(s.k1, "k1");
    const long ky = as_count(s.ky, "ky");
    if (k0 + k1 + ky != n)
        throw parameter_error("counts sum to " + std::to_string(k0 + k1 + ky) +
                              ", expected n = " + std::to_string(n));
    if (ky > 0 && !s.y)
        throw parameter_error("interior count is positive but y is absent");

    std::vector<double> x;
    x.reserve(std::size_t(n));
    x.insert(x.end(), std::size_t(k0), 0.0);
    if (ky > 0) x.insert(x.end(), std::size_t(ky), *s.y);
    x.insert(x.end(), std::size_t(k1), 1.0);
    return x;
}

/// Reflection partner of x about the center: 2c - x. The objective
/// satisfies f(x) + f(2c - x) = 2 f(c). The eval domain is symmetric
/// about c, so the reflection of an admissible point is admissible.
inline double antisym_complement(const ObjectiveSpec& spec, double x) {
    if (!spec.in_eval_domain(x))
        throw domain_error("x = " + detail::fmt(x) + " outside the eval domain");
    return 2.0 * spec.center() - x;
}

} // namespace snk

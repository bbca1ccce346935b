#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snk/error.hpp"

namespace snk {

/// Built-in objective families. Every family is antisymmetric about a
/// center c in (0,1): f(x) + f(2c - x) = 2 f(c), strictly convex left
/// of c and strictly concave right of c.
enum class Family {
    smoothstep,  ///< f(x) = 3x^2 - 2x^3, c = 1/2
    probit,      ///< f(x) = Phi(beta * x - beta0), c = beta0 / beta
    logistic,    ///< f(x) = sigma(scale * (x - 1/2)), c = 1/2
    neg_tangent, ///< f(x) = -tan((pi/2) * (x - 1/2)), c = 1/2
    user_table,  ///< monotone cubic interpolant of tabulated points
};

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::smoothstep: return "smoothstep";
    case Family::probit: return "probit";
    case Family::logistic: return "logistic";
    case Family::neg_tangent: return "neg_tangent";
    case Family::user_table: return "user_table";
    }
    return "unknown";
}

inline std::optional<Family> family_from_name(std::string_view name) {
    if (name == "smoothstep") return Family::smoothstep;
    if (name == "probit") return Family::probit;
    if (name == "logistic") return Family::logistic;
    if (name == "neg_tangent") return Family::neg_tangent;
    if (name == "user_table") return Family::user_table;
    return std::nullopt;
}

/// Optional family parameters; only the fields relevant to the chosen
/// family may be set, anything else is rejected at construction.
struct Params {
    std::optional<double> beta;   ///< probit slope, > 0
    std::optional<double> beta0;  ///< probit shift; center is beta0/beta
    std::optional<double> scale;  ///< logistic steepness, > 0
    std::optional<double> center; ///< user_table antisymmetry center
    std::vector<std::pair<double, double>> table; ///< user_table (x, f) data
};

namespace detail {

inline constexpr double inv_sqrt2 = 0.70710678118654752440;
inline constexpr double inv_sqrt2pi = 0.39894228040143267794;
inline constexpr double pi = 3.14159265358979323846;

inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * inv_sqrt2); }
inline double norm_pdf(double z) { return inv_sqrt2pi * std::exp(-0.5 * z * z); }

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// Shape-preserving piecewise cubic (Fritsch-Carlson slopes). The
/// derivative oracles differentiate the interpolant itself, so value,
/// deriv and deriv2 are mutually consistent by construction.
class pchip {
public:
    pchip() = default;

    explicit pchip(std::vector<std::pair<double, double>> pts) {
        if (pts.size() < 2)
            throw parameter_error("user_table needs at least 2 points");
        std::sort(pts.begin(), pts.end());
        const std::size_t n = pts.size();
        xs_.resize(n);
        ys_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs_[i] = pts[i].first;
            ys_[i] = pts[i].second;
            if (i > 0 && !(xs_[i] > xs_[i - 1]))
                throw parameter_error("user_table abscissae must be strictly increasing");
        }
        slopes_ = fritsch_carlson(xs_, ys_);
    }

    double lo() const { return xs_.front(); }
    double hi() const { return xs_.back(); }

    double value(double x) const {
        const auto [i, t] = locate(x);
        const auto [c2, c3] = coeffs(i);
        return ys_[i] + t * (slopes_[i] + t * (c2 + t * c3));
    }

    double deriv(double x) const {
        const auto [i, t] = locate(x);
        const auto [c2, c3] = coeffs(i);
        return slopes_[i] + t * (2.0 * c2 + t * 3.0 * c3);
    }

    double deriv2(double x) const {
        const auto [i, t] = locate(x);
        const auto [c2, c3] = coeffs(i);
        return 2.0 * c2 + 6.0 * c3 * t;
    }

private:
    std::vector<double> xs_, ys_, slopes_;

    static std::vector<double> fritsch_carlson(const std::vector<double>& x,
                                               const std::vector<double>& y) {
        const std::size_t n = x.size();
        std::vector<double> h(n - 1), d(n - 1), m(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            d[i] = (y[i + 1] - y[i]) / h[i];
        }
        if (n == 2) {
            m[0] = m[1] = d[0];
            return m;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        m[0] = edge_slope(h[0], h[1], d[0], d[1]);
        m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        return m;
    }

    // One-sided three-point estimate, limited so monotonicity of the
    // boundary interval is preserved.
    static double edge_slope(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return m;
    }

    std::pair<std::size_t, double> locate(double x) const {
        if (x < xs_.front() || x > xs_.back())
            throw oracle_error("interpolation point outside tabulated range");
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        std::size_t i = (it == xs_.begin()) ? 0 : std::size_t(it - xs_.begin()) - 1;
        if (i + 1 >= xs_.size()) i = xs_.size() - 2;
        return {i, x - xs_[i]};
    }

    std::pair<double, double> coeffs(std::size_t i) const {
        const double h = xs_[i + 1] - xs_[i];
        const double del = (ys_[i + 1] - ys_[i]) / h;
        const double c2 = (3.0 * del - 2.0 * slopes_[i] - slopes_[i + 1]) / h;
        const double c3 = (slopes_[i] + slopes_[i + 1] - 2.0 * del) / (h * h);
        return {c2, c3};
    }
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace detail

/**
 * An objective f together with its analytic first and second
 * derivatives and its antisymmetry center c.
 *
 * The oracles are pure: same input, same output, no hidden state. All
 * three are defined on the eval domain [min(0, 2c-1), max(1, 2c)] so
 * that the reflection 2c - x of any point of [0, 1] stays evaluable.
 */
class ObjectiveSpec {
public:
    using Oracle = std::function<double(double)>;

    ObjectiveSpec(Family family, double center, Oracle value, Oracle deriv,
                  Oracle deriv2, std::map<std::string, double> params = {})
        : family_(family),
          center_(center),
          value_(std::move(value)),
          deriv_(std::move(deriv)),
          deriv2_(std::move(deriv2)),
          params_(std::move(params)) {
        if (!(center > 0.0 && center < 1.0))
            throw parameter_error("antisymmetry center must lie in (0, 1), got " +
                                  detail::fmt(center));
        lo_ = std::min(0.0, 2.0 * center - 1.0);
        hi_ = std::max(1.0, 2.0 * center);
    }

    Family family() const noexcept { return family_; }
    double center() const noexcept { return center_; }
    double eval_lo() const noexcept { return lo_; }
    double eval_hi() const noexcept { return hi_; }

    bool in_eval_domain(double x) const noexcept {
        // roundoff slack: 2c-1 and 2c can land one ulp differently
        // depending on the expression that produced the query point
        return std::isfinite(x) && x >= lo_ - 1e-12 && x <= hi_ + 1e-12;
    }

    /// f(x); throws domain_error outside the eval domain.
    double value(double x) const { return value_(checked(x)); }

    /// f'(x)
    double deriv(double x) const { return deriv_(checked(x)); }

    /// f''(x)
    double deriv2(double x) const { return deriv2_(checked(x)); }

    /// Parameters the objective was built with, for reporting.
    const std::map<std::string, double>& params() const noexcept { return params_; }

private:
    double checked(double x) const {
        if (!in_eval_domain(x))
            throw domain_error("evaluation point " + detail::fmt(x) +
                               " outside eval domain [" + detail::fmt(lo_) + ", " +
                               detail::fmt(hi_) + "]");
        return x;
    }

    Family family_;
    double center_;
    Oracle value_, deriv_, deriv2_;
    std::map<std::string, double> params_;
    double lo_ = 0.0, hi_ = 1.0;
};

inline ObjectiveSpec make_smoothstep() {
    return ObjectiveSpec(
        Family::smoothstep, 0.5,
        [](double x) { return x * x * (3.0 - 2.0 * x); },
        [](double x) { return 6.0 * x * (1.0 - x); },
        [](double x) { return 6.0 - 12.0 * x; });
}

inline ObjectiveSpec make_probit(double beta, double beta0) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw parameter_error("probit beta must be positive, got " + detail::fmt(beta));
    const double c = beta0 / beta;
    if (!(c > 0.0 && c < 1.0))
        throw parameter_error("probit center beta0/beta must lie in (0, 1), got " +
                              detail::fmt(c));
    return ObjectiveSpec(
        Family::probit, c,
        [=](double x) { return detail::norm_cdf(beta * x - beta0); },
        [=](double x) { return beta * detail::norm_pdf(beta * x - beta0); },
        [=](double x) {
            const double z = beta * x - beta0;
            return -beta * beta * z * detail::norm_pdf(z);
        },
        {{"beta", beta}, {"beta0", beta0}});
}

inline ObjectiveSpec make_logistic(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw parameter_error("logistic scale must be positive, got " +
                              detail::fmt(scale));
    return ObjectiveSpec(
        Family::logistic, 0.5,
        [=](double x) { return detail::sigmoid(scale * (x - 0.5)); },
        [=](double x) {
            const double s = detail::sigmoid(scale * (x - 0.5));
            return scale * s * (1.0 - s);
        },
        [=](double x) {
            const double s = detail::sigmoid(scale * (x - 0.5));
            return scale * scale * s * (1.0 - s) * (1.0 - 2.0 * s);
        },
        {{"scale", scale}});
}

inline ObjectiveSpec make_neg_tangent() {
    constexpr double w = detail::pi / 2.0;
    return ObjectiveSpec(
        Family::neg_tangent, 0.5,
        [](double x) { return -std::tan(w * (x - 0.5)); },
        [](double x) {
            const double co = std::cos(w * (x - 0.5));
            return -w / (co * co);
        },
        [](double x) {
            const double z = w * (x - 0.5);
            const double co = std::cos(z);
            return -2.0 * w * w * std::tan(z) / (co * co);
        });
}

/// Builds an interpolated objective from tabulated (x, f(x)) samples.
/// The table must cover the full eval domain [min(0, 2c-1), max(1, 2c)].
inline ObjectiveSpec make_user_table(std::vector<std::pair<double, double>> pts,
                                     double center) {
    if (!(center > 0.0 && center < 1.0))
        throw parameter_error("user_table center must lie in (0, 1), got " +
                              detail::fmt(center));
    auto interp = std::make_shared<detail::pchip>(std::move(pts));
    const double lo = std::min(0.0, 2.0 * center - 1.0);
    const double hi = std::max(1.0, 2.0 * center);
    constexpr double cover_slack = 1e-12;
    if (interp->lo() > lo + cover_slack || interp->hi() < hi - cover_slack)
        throw parameter_error("user_table must cover [" + detail::fmt(lo) + ", " +
                              detail::fmt(hi) + "], covers [" +
                              detail::fmt(interp->lo()) + ", " +
                              detail::fmt(interp->hi()) + "]");
    // Coverage slack means eval-domain edges may sit a hair outside the
    // table; clamp onto the tabulated range before interpolating.
    const double tlo = interp->lo(), thi = interp->hi();
    return ObjectiveSpec(
        Family::user_table, center,
        [interp, tlo, thi](double x) { return interp->value(std::clamp(x, tlo, thi)); },
        [interp, tlo, thi](double x) { return interp->deriv(std::clamp(x, tlo, thi)); },
        [interp, tlo, thi](double x) { return interp->deriv2(std::clamp(x, tlo, thi)); },
        {{"center", center}});
}

/// Dispatching factory used by the problem-file loader.
inline ObjectiveSpec make_objective(Family family, const Params& p = {}) {
    const auto reject = [&](bool cond, const char* what) {
        if (cond)
            throw parameter_error(std::string("family ") +
                                  std::string(family_name(family)) +
                                  " does not take parameter " + what);
    };
    switch (family) {
    case Family::smoothstep:
    case Family::neg_tangent:
        reject(p.beta.has_value(), "beta");
        reject(p.beta0.has_value(), "beta0");
        reject(p.scale.has_value(), "scale");
        reject(p.center.has_value(), "center");
        reject(!p.table.empty(), "table");
        return family == Family::smoothstep ? make_smoothstep() : make_neg_tangent();
    case Family::probit:
        reject(p.scale.has_value(), "scale");
        reject(p.center.has_value(), "center");
        reject(!p.table.empty(), "table");
        if (!p.beta || !p.beta0)
            throw parameter_error("probit requires parameters beta and beta0");
        return make_probit(*p.beta, *p.beta0);
    case Family::logistic:
        reject(p.beta.has_value(), "beta");
        reject(p.beta0.has_value(), "beta0");
        reject(p.center.has_value(), "center");
        reject(!p.table.empty(), "table");
        if (!p.scale)
            throw parameter_error("logistic requires parameter scale");
        return make_logistic(*p.scale);
    case Family::user_table:
        reject(p.beta.has_value(), "beta");
        reject(p.beta0.has_value(), "beta0");
        reject(p.scale.has_value(), "scale");
        if (!p.center)
            throw parameter_error("user_table requires parameter center");
        if (p.table.empty())
            throw parameter_error("user_table requires tabulated points");
        return make_user_table(p.table, *p.center);
    }
    throw parameter_error("unknown objective family");
}

/// One structural assumption, checked on a sample grid.
struct AssumptionCheck {
    std::string name;
    bool pass = false;
    double worst_residual = 0.0; ///< extremal residual or curvature value
    double worst_x = 0.0;        ///< sample point attaining it
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const AssumptionCheck& c) { return c.pass; });
    }

    const AssumptionCheck* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

/**
 * Samples the oracles and checks the assumptions the solver relies on:
 *
 *  - antisymmetry   : f(x) + f(2c-x) - 2 f(c) = 0 wherever both x and
 *                     2c-x lie in [0, 1], residual <= tol
 *  - deriv_symmetry : f'(x) = f'(2c-x) on the same set
 *  - convex_left    : f'' > 0 on (0, c - tol)
 *  - concave_right  : f'' < 0 on (c + tol, 1)
 *  - deriv_fd       : f' matches central differences of f
 *  - deriv2_fd      : f'' matches central differences of f'
 *
 * Finite-difference checks use relative error 1e-6 against the analytic
 * oracle. Sample points carry a fixed irrational offset so that knots of
 * tabulated objectives are not straddled systematically.
 */
inline ValidationReport validate_assumptions(const ObjectiveSpec& spec,
                                             int samples = 101,
                                             double tol = 1e-9) {
    if (samples < 2) throw parameter_error("validation needs at least 2 samples");
    if (!(tol > 0.0)) throw parameter_error("validation tolerance must be positive");

    const double c = spec.center();
    ValidationReport rep;

    // Antisymmetry holds on the reflection-closed part of [0, 1].
    {
        const double lo = std::max(0.0, 2.0 * c - 1.0);
        const double hi = std::min(1.0, 2.0 * c);
        const double fc = spec.value(c);
        AssumptionCheck anti{"antisymmetry", true, 0.0, lo};
        AssumptionCheck dsym{"deriv_symmetry", true, 0.0, lo};
        for (int i = 0; i < samples; ++i) {
            const double x = lo + (hi - lo) * (i + 0.5) / samples;
            const double xr = 2.0 * c - x;
            const double ra = std::abs(spec.value(x) + spec.value(xr) - 2.0 * fc);
            if (ra > anti.worst_residual) { anti.worst_residual = ra; anti.worst_x = x; }
            const double rd = std::abs(spec.deriv(x) - spec.deriv(xr));
            if (rd > dsym.worst_residual) { dsym.worst_residual = rd; dsym.worst_x = x; }
        }
        anti.pass = anti.worst_residual <= tol;
        // derivative symmetry inherits scale from f'; allow the same
        // budget relative to the largest slope seen at the center
        dsym.pass = dsym.worst_residual <= tol * std::max(1.0, std::abs(spec.deriv(c)));
        rep.checks.push_back(anti);
        rep.checks.push_back(dsym);
    }

    // Curvature signs, staying tol away from the inflection at c.
    {
        AssumptionCheck left{"convex_left", true, 0.0, 0.0};
        AssumptionCheck right{"concave_right", true, 0.0, 1.0};
        bool left_any = false, right_any = false;
        for (int i = 0; i < samples; ++i) {
            const double t = (i + 0.5) / samples;
            const double xl = t * (c - tol);
            if (xl > 0.0 && xl < c - tol) {
                const double v = spec.deriv2(xl);
                if (!left_any || v < left.worst_residual) {
                    left.worst_residual = v;
                    left.worst_x = xl;
                    left_any = true;
                }
            }
            const double xr = (c + tol) + t * (1.0 - c - tol);
            if (xr > c + tol && xr < 1.0) {
                const double v = spec.deriv2(xr);
                if (!right_any || v > right.worst_residual) {
                    right.worst_residual = v;
                    right.worst_x = xr;
                    right_any = true;
                }
            }
        }
        left.pass = left_any && left.worst_residual > 0.0;
        right.pass = right_any && right.worst_residual < 0.0;
        rep.checks.push_back(left);
        rep.checks.push_back(right);
    }

    // Oracle consistency by central differences.
    {
        const double lo = spec.eval_lo(), hi = spec.eval_hi();
        const double h = 1e-6 * (hi - lo);
        constexpr double fd_rel = 1e-6;
        constexpr double offset = 0.3819660112501051; // avoids uniform knots
        AssumptionCheck d1{"deriv_fd", true, 0.0, lo};
        AssumptionCheck d2{"deriv2_fd", true, 0.0, lo};
        for (int i = 0; i < samples; ++i) {
            const double x = lo + h + (hi - lo - 2.0 * h) * (i + offset) / samples;
            const double fd = (spec.value(x + h) - spec.value(x - h)) / (2.0 * h);
            const double an = spec.deriv(x);
            const double r1 = std::abs(fd - an) / std::max(1.0, std::abs(an));
            if (r1 > d1.worst_residual) { d1.worst_residual = r1; d1.worst_x = x; }
            const double fd2 = (spec.deriv(x + h) - spec.deriv(x - h)) / (2.0 * h);
            const double an2 = spec.deriv2(x);
            const double r2 = std::abs(fd2 - an2) / std::max(1.0, std::abs(an2));
            if (r2 > d2.worst_residual) { d2.worst_residual = r2; d2.worst_x = x; }
        }
        d1.pass = d1.worst_residual <= fd_rel;
        d2.pass = d2.worst_residual <= fd_rel;
        rep.checks.push_back(d1);
        rep.checks.push_back(d2);
    }

    return rep;
}

/// Separable objective sum F(x) = sum_i f(x_i) over x in [0, 1]^n.
inline double eval_F(const ObjectiveSpec& spec, std::span<const double> x) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= 0.0 && x[i] <= 1.0))
            throw domain_error("coordinate " + std::to_string(i) + " = " +
                               detail::fmt(x[i]) + " outside [0, 1]");
        total += spec.value(x[i]);
    }
    return total;
}

} // namespace snk

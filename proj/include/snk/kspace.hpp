#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "snk/error.hpp"
#include "snk/objective.hpp"
#include "snk/tangency.hpp"

namespace snk {

/// Interior values within fold_eps of 0 or 1 are folded into the
/// boundary blocks; equality constraints are honored to feas_eps.
inline constexpr double fold_eps = 1e-12;
inline constexpr double feas_eps = 1e-9;

/// Half-width of the decision band around M = d0 * n inside which both
/// branch candidates are evaluated and compared.
inline double branch_band(int n) { return 1e-9 * n; }

/// Candidate labels from the KKT analysis. A/C1/C2/C3 name continuous
/// stationary classes; A-, C2-, C2+ are their integer roundings.
enum class Label { A, A_minus, C1, C2, C2_minus, C2_plus, C3, custom };

inline std::string_view label_name(Label l) {
    switch (l) {
    case Label::A: return "A";
    case Label::A_minus: return "A-";
    case Label::C1: return "C1";
    case Label::C2: return "C2";
    case Label::C2_minus: return "C2-";
    case Label::C2_plus: return "C2+";
    case Label::C3: return "C3";
    case Label::custom: return "custom";
    }
    return "?";
}

/**
 * A point of the reduced solution space: k0 coordinates at 0, k1 at 1,
 * ky at the common interior value y. Counts are real; integer-mode
 * candidates carry integer values in them. y is present exactly when
 * ky > 0, and then k1 + y * ky = M holds by construction.
 */
struct KSolution {
    double k0 = 0.0;
    double k1 = 0.0;
    double ky = 0.0;
    std::optional<double> y;
    double objective = 0.0;
    Label label = Label::custom;
    bool feasible = true;
};

/// Interior value forced by the two equality constraints, or nullopt
/// when no interior block remains (ky = 0).
inline std::optional<double> y_from_counts(int n, double M, double k0, double k1) {
    const double ky = double(n) - k0 - k1;
    const double slack = fold_eps * std::max(1.0, double(n));
    if (ky < -slack)
        throw parameter_error("k0 + k1 = " + detail::fmt(k0 + k1) +
                              " exceeds n = " + std::to_string(n));
    if (ky <= slack) return std::nullopt;
    return (M - k1) / ky;
}

/**
 * Assembles a KSolution from (k0, k1) under the constraints of an
 * (n, M) instance: derives ky and y, folds near-boundary y into the
 * adjacent count, evaluates the reduced objective and flags
 * feasibility. Counts may be fractional (continuous candidates).
 *
 * Infeasible candidates are still assembled; their objective is NaN
 * when y falls outside the objective's eval domain.
 */
inline KSolution make_k_solution(const ObjectiveSpec& spec, int n, double M,
                                 double k0, double k1, Label label,
                                 long* f_evals = nullptr) {
    KSolution s;
    s.label = label;
    s.k0 = k0;
    s.k1 = k1;

    const double slack = fold_eps * std::max(1.0, double(n));
    double ky = double(n) - k0 - k1;
    bool folded = false;
    if (ky < -slack)
        throw parameter_error("k0 + k1 = " + detail::fmt(k0 + k1) +
                              " exceeds n = " + std::to_string(n));
    if (ky <= slack) {
        ky = 0.0;
    } else {
        const double y = (M - k1) / ky;
        if (std::abs(y) <= fold_eps) {
            s.k0 += ky; // interior block sits at 0
            ky = 0.0;
            folded = true;
        } else if (std::abs(y - 1.0) <= fold_eps) {
            s.k1 += ky; // interior block sits at 1
            ky = 0.0;
            folded = true;
        } else {
            s.y = y;
        }
    }
    s.ky = ky;

    bool feasible = s.k0 >= -feas_eps && s.k1 >= -feas_eps;
    if (s.y) {
        feasible = feasible && *s.y > 0.0 && *s.y < 1.0;
    } else if (!folded) {
        // a fold snaps the mass equality by construction; a genuine
        // boundary-only candidate has to meet it on its own
        feasible = feasible && std::abs(s.k1 - M) <= feas_eps;
    }
    s.feasible = feasible;

    const auto f = [&](double x) {
        if (f_evals) ++*f_evals;
        return spec.value(x);
    };
    double obj = 0.0;
    bool defined = true;
    if (s.k0 != 0.0) obj += f(0.0) * s.k0;
    if (s.k1 != 0.0) obj += f(1.0) * s.k1;
    if (s.y) {
        if (spec.in_eval_domain(*s.y))
            obj += f(*s.y) * s.ky;
        else
            defined = false;
    }
    s.objective = defined ? obj : std::numeric_limits<double>::quiet_NaN();
    return s;
}

/// Problem data: n unit-box variables, target mass M, and the shared
/// objective. Optionally remembers the affine box [a, b] and original
/// mass the instance was normalized from.
class ProblemInstance {
public:
    struct Bounds {
        double a = 0.0;
        double b = 1.0;
        double M0 = 0.0; ///< mass in original coordinates
    };

    ProblemInstance(int n, double M, ObjectiveSpec spec,
                    std::optional<Bounds> bounds = std::nullopt)
        : n_(n), M_(M), spec_(std::move(spec)), bounds_(std::move(bounds)) {
        if (n < 1) throw parameter_error("n must be a positive integer, got " +
                                         std::to_string(n));
        if (!std::isfinite(M_))
            throw parameter_error("M must be finite");
        // forgive pure roundoff at the ends of the feasible mass range
        if (M_ < 0.0 && M_ >= -1e-12) M_ = 0.0;
        if (M_ > double(n) && M_ <= double(n) + 1e-12) M_ = double(n);
        if (M_ < 0.0 || M_ > double(n))
            throw infeasible_error("M outside [0, n]: M = " + detail::fmt(M_) +
                                   ", n = " + std::to_string(n));
    }

    int n() const noexcept { return n_; }
    double M() const noexcept { return M_; }
    const ObjectiveSpec& objective() const noexcept { return spec_; }
    const std::optional<Bounds>& bounds() const noexcept { return bounds_; }

private:
    int n_;
    double M_;
    ObjectiveSpec spec_;
    std::optional<Bounds> bounds_;
};

struct Interval {
    double lo = 0.0;
    double hi = -1.0;
    bool empty() const { return !(lo <= hi); }
};

struct IntInterval {
    long lo = 0;
    long hi = -1;
    bool empty() const { return lo > hi; }
};

/// Ranges of k0 and k1 for which a fixed interior value y admits
/// nonnegative counts meeting both equality constraints.
struct FeasibleRanges {
    Interval k0;
    Interval k1;
};

struct IntFeasibleRanges {
    IntInterval k0;
    IntInterval k1;
};

inline FeasibleRanges continuous_feasible_range(int n, double M, double y) {
    if (!(y > 0.0 && y < 1.0))
        throw parameter_error("interior value y must lie in (0, 1), got " +
                              detail::fmt(y));
    if (n < 1) throw parameter_error("n must be positive");
    if (M < 0.0 || M > double(n))
        throw infeasible_error("M outside [0, n]");
    FeasibleRanges r;
    r.k0 = {std::max((y * n - M) / y, 0.0), double(n) - M};
    r.k1 = {std::max((M - y * n) / (1.0 - y), 0.0), M};
    return r;
}

inline IntFeasibleRanges integer_feasible_range(int n, double M, double y) {
    const FeasibleRanges c = continuous_feasible_range(n, M, y);
    IntFeasibleRanges r;
    r.k0 = {long(std::ceil(c.k0.lo - feas_eps)), long(std::floor(c.k0.hi + feas_eps))};
    r.k1 = {long(std::ceil(c.k1.lo - feas_eps)), long(std::floor(c.k1.hi + feas_eps))};
    return r;
}

/// dF/dk0 along the constraint manifold: f(0) + y f'(y) - f(y).
/// Vanishes exactly at y = d0.
inline double partial_k0(const ObjectiveSpec& spec, const KSolution& s) {
    if (!s.y)
        throw domain_error("partial derivatives need an interior block (ky > 0)");
    const double y = *s.y;
    return spec.value(0.0) + y * spec.deriv(y) - spec.value(y);
}

/// dF/dk1 along the constraint manifold: f(1) + (y - 1) f'(y) - f(y).
/// Vanishes exactly at y = d1.
inline double partial_k1(const ObjectiveSpec& spec, const KSolution& s) {
    if (!s.y)
        throw domain_error("partial derivatives need an interior block (ky > 0)");
    const double y = *s.y;
    return spec.value(1.0) + (y - 1.0) * spec.deriv(y) - spec.value(y);
}

/**
 * The closed-form candidate tables place interior coordinates at a
 * tangency point, so they only apply when both tangency points lie in
 * the unit interval. That holds iff the secant f(1) - f(0) is at least
 * as steep as both end slopes; a shallow objective with an off-center
 * inflection can fail it (its tangency point escapes the box), in which
 * case only the enumeration solvers remain applicable.
 */
inline bool closed_form_applies(const ObjectiveSpec& spec) {
    const double rise = spec.value(1.0) - spec.value(0.0);
    // ties mean a tangency point sits exactly on a box corner, where the
    // candidate degenerates into a pure boundary solution; still fine
    const double slack = 1e-12 * std::max(1.0, std::abs(rise));
    return rise >= std::max(spec.deriv(0.0), spec.deriv(1.0)) - slack;
}

namespace detail {

inline void require_closed_form(const ObjectiveSpec& spec) {
    if (closed_form_applies(spec)) return;
    throw assumption_error(
        "closed-form candidates do not apply: an end slope of f exceeds the "
        "secant f(1) - f(0), which puts a tangency point outside [0, 1]; "
        "solve this objective by enumeration instead");
}

} // namespace detail

/**
 * The four KKT stationary classes of the continuous relaxation, in the
 * fixed order A, C1, C2, C3. Every row is assembled and listed;
 * classes whose counts leave [0, n] or whose interior value leaves
 * (0, 1) are flagged infeasible.
 */
inline std::vector<KSolution> kkt_candidates(const ProblemInstance& inst,
                                             const Tangency& tang,
                                             long* f_evals = nullptr) {
    const int n = inst.n();
    const double M = inst.M();
    const ObjectiveSpec& spec = inst.objective();
    const double d0 = tang.d0.d;
    const double d1 = tang.d1.d;

    std::vector<KSolution> out;
    out.reserve(4);
    out.push_back(make_k_solution(spec, n, M, double(n) - M, M, Label::A, f_evals));
    out.push_back(make_k_solution(spec, n, M, 0.0, 0.0, Label::C1, f_evals));
    out.push_back(
        make_k_solution(spec, n, M, double(n) - M / d0, 0.0, Label::C2, f_evals));
    out.push_back(make_k_solution(
        spec, n, M, 0.0, double(n) - (double(n) - M) / (1.0 - d1), Label::C3, f_evals));
    return out;
}

/**
 * Optimum of the continuous relaxation: C2 = (n - M/d0, 0, M/d0, d0)
 * when M <= d0 * n, C1 = (0, 0, n, M/n) otherwise. Within the decision
 * band both are evaluated and the better one returned, preferring C2 on
 * ties (there the two coincide).
 */
inline KSolution solve_continuous(const ProblemInstance& inst, const Tangency& tang,
                                  long* f_evals = nullptr) {
    const int n = inst.n();
    const double M = inst.M();
    const ObjectiveSpec& spec = inst.objective();
    detail::require_closed_form(spec);
    const double split = tang.d0.d * n;
    const double band = branch_band(n);

    const auto make_c2 = [&] {
        double k0 = double(n) - M / tang.d0.d;
        // inside the band C2 can stick out by roundoff; it then
        // coincides with C1, so clamp onto the vertex
        if (k0 < 0.0 && k0 >= -band) k0 = 0.0;
        return make_k_solution(spec, n, M, k0, 0.0, Label::C2, f_evals);
    };
    const auto make_c1 = [&] {
        return make_k_solution(spec, n, M, 0.0, 0.0, Label::C1, f_evals);
    };

    if (M < split - band) return make_c2();
    if (M > split + band) return make_c1();
    KSolution c2 = make_c2();
    KSolution c1 = make_c1();
    if (!c2.feasible) return c1;
    return (c2.objective >= c1.objective) ? c2 : c1;
}

/// Candidate list and winner of the integer solve.
struct IntegerCandidates {
    std::vector<KSolution> candidates;
    KSolution chosen;
    long f_evals = 0;
};

namespace detail {

inline int tie_rank(Label l) {
    switch (l) {
    case Label::A_minus: return 0;
    case Label::C2_minus: return 1;
    case Label::C2_plus: return 2;
    default: return 3;
    }
}

/// Ordering for the integer winner: higher objective, then larger
/// interior block, then the fixed label order A-, C2-, C2+.
inline bool better(const KSolution& a, const KSolution& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if (a.ky != b.ky) return a.ky > b.ky;
    return tie_rank(a.label) < tie_rank(b.label);
}

} // namespace detail

/**
 * Integer optimum in O(1) candidate evaluations.
 *
 * For M >= d0 * n the spread-out solution C1 = (0, 0, n, M/n) is
 * optimal. Below the split the winner is the best of
 *
 *   A-  = (floor(n - M), floor(M), rest, frac)
 *   C2- = (n - ceil(M/d0), 0, ceil(M/d0), M/ky)
 *   C2+ = (n - floor(M/d0), 0, floor(M/d0), M/ky)
 *
 * Inside the decision band all four are evaluated. Candidates whose
 * rounding leaves the feasible set are listed but flagged and never
 * chosen; the classes the theory guarantees feasible trigger an
 * internal error if they come out infeasible anyway.
 */
inline IntegerCandidates solve_integer_candidates(const ProblemInstance& inst,
                                                  const Tangency& tang) {
    const int n = inst.n();
    const double M = inst.M();
    const ObjectiveSpec& spec = inst.objective();
    detail::require_closed_form(spec);
    const double split = tang.d0.d * n;
    const double band = branch_band(n);

    IntegerCandidates out;
    const bool upper = M >= split - band; // C1 branch
    const bool lower = M <= split + band; // rounded-candidate branch

    if (lower) {
        const double q = M / tang.d0.d;
        const double a_k0 = std::floor(double(n) - M);
        const double a_k1 = std::floor(M);
        out.candidates.push_back(make_k_solution(spec, n, M, a_k0, a_k1,
                                                 Label::A_minus, &out.f_evals));
        out.candidates.push_back(make_k_solution(spec, n, M,
                                                 double(n) - std::ceil(q), 0.0,
                                                 Label::C2_minus, &out.f_evals));
        out.candidates.push_back(make_k_solution(spec, n, M,
                                                 double(n) - std::floor(q), 0.0,
                                                 Label::C2_plus, &out.f_evals));
    }
    if (upper) {
        out.candidates.push_back(
            make_k_solution(spec, n, M, 0.0, 0.0, Label::C1, &out.f_evals));
    }

    const KSolution* best = nullptr;
    for (const KSolution& s : out.candidates) {
        if (!s.feasible) continue;
        if (!best || detail::better(s, *best)) best = &s;
    }
    if (!best)
        throw internal_error("no feasible integer candidate; preprocessing "
                             "tolerance on d0 is too loose for this instance");
    // guaranteed-feasible classes act as consistency sentinels
    const bool strictly_lower = M < split - band;
    if (strictly_lower) {
        for (const KSolution& s : out.candidates) {
            if ((s.label == Label::A_minus || s.label == Label::C2_minus) &&
                !s.feasible)
                throw internal_error(
                    std::string("candidate ") + std::string(label_name(s.label)) +
                    " must be feasible for M < d0 * n; d0 is inconsistent");
        }
    }
    out.chosen = *best;
    return out;
}

} // namespace snk

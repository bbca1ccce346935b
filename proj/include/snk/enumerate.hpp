#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <vector>

#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/report.hpp"
#include "snk/solve.hpp"
#include "snk/tangency.hpp"

namespace snk {

/**
 * Reference solver: scans every integer pair (k0, k1) with
 * k0, k1 >= 0 and k0 + k1 <= n, derives y from the equalities and keeps
 * the best feasible point. Pairs whose y lands within fold_eps of 0 or
 * 1 are remapped to their folded equivalents instead of being skipped,
 * so integral M never loses the boundary. O(n^2) evaluations of f.
 */
inline KSolution enumerate_best(const ProblemInstance& inst,
                                long* f_evals_out = nullptr) {
    const long n = inst.n();
    const double M = inst.M();
    const ObjectiveSpec& spec = inst.objective();

    long evals = 0;
    const double f0 = (++evals, spec.value(0.0));
    const double f1 = (++evals, spec.value(1.0));

    struct Entry {
        double k0 = 0, k1 = 0, ky = 0;
        std::optional<double> y;
        double obj = 0;
    };
    std::optional<Entry> best;

    const auto consider = [&](const Entry& e) {
        if (!best || e.obj > best->obj ||
            (e.obj == best->obj &&
             (e.ky > best->ky || (e.ky == best->ky && e.k0 < best->k0)))) {
            best = e;
        }
    };

    for (long k0 = 0; k0 <= n; ++k0) {
        for (long k1 = 0; k1 + k0 <= n; ++k1) {
            const long ky = n - k0 - k1;
            if (ky == 0) {
                if (std::abs(double(k1) - M) > feas_eps) continue;
                consider({double(k0), double(k1), 0.0, std::nullopt,
                          f0 * double(k0) + f1 * double(k1)});
                continue;
            }
            const double y = (M - double(k1)) / double(ky);
            if (std::abs(y) <= fold_eps) {
                consider({double(k0 + ky), double(k1), 0.0, std::nullopt,
                          f0 * double(k0 + ky) + f1 * double(k1)});
            } else if (std::abs(y - 1.0) <= fold_eps) {
                consider({double(k0), double(k1 + ky), 0.0, std::nullopt,
                          f0 * double(k0) + f1 * double(k1 + ky)});
            } else if (y > 0.0 && y < 1.0) {
                ++evals;
                consider({double(k0), double(k1), double(ky), y,
                          f0 * double(k0) + f1 * double(k1) +
                              spec.value(y) * double(ky)});
            }
        }
    }

    if (!best) throw internal_error("enumeration found no feasible partition");
    if (f_evals_out) *f_evals_out = evals;

    KSolution s;
    s.k0 = best->k0;
    s.k1 = best->k1;
    s.ky = best->ky;
    s.y = best->y;
    s.objective = best->obj;
    s.label = Label::custom;
    s.feasible = true;
    return s;
}

/// O(n^2) reference solve packaged as a full report.
inline SolveReport enumerate_partitions(const ProblemInstance& inst,
                                        const Tangency& tang) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    rep.chosen = enumerate_best(inst, &rep.f_eval_count);
    detail::fill_report_common(rep, inst, tang, Algorithm::enumerate_all,
                               expand(rep.chosen, inst.n()));
    rep.candidates = {rep.chosen};
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline SolveReport enumerate_partitions(const ProblemInstance& inst,
                                        double tol = 1e-10) {
    return enumerate_partitions(inst, preprocess(inst.objective(), tol));
}

/// Best point found by the x-space grid scan.
struct GridResult {
    std::vector<double> x;
    double objective = 0.0;
    long f_evals = 0;
};

/**
 * Exhaustive scan of {x in [0,1]^n : sum x_i = M} on a grid of spacing
 * step, with the last coordinate eliminated. Independent of the
 * k-space machinery entirely; exists to confirm trine optimality at
 * desk scale. Exponential in n, therefore capped at n <= 4. The best
 * found objective is within n * L * step of the true optimum, where L
 * bounds |f'| on the grid.
 */
inline GridResult grid_oracle(const ProblemInstance& inst, double step) {
    const int n = inst.n();
    if (n > 4)
        throw capability_error("grid oracle is capped at n <= 4, got n = " +
                               std::to_string(n));
    if (!(step > 0.0)) throw parameter_error("step must be positive");
    const double M = inst.M();
    const ObjectiveSpec& spec = inst.objective();

    std::vector<double> xs;
    for (double v = 0.0; v < 1.0 - 1e-12; v += step) xs.push_back(v);
    xs.push_back(1.0);

    GridResult out;
    std::vector<double> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fx[i] = spec.value(xs[i]);
        ++out.f_evals;
    }

    std::vector<double> current(std::size_t(n), 0.0);
    bool found = false;

    const auto leaf = [&](double acc, double remaining) {
        if (remaining < -feas_eps || remaining > 1.0 + feas_eps) return;
        const double last = std::clamp(remaining, 0.0, 1.0);
        ++out.f_evals;
        const double obj = acc + spec.value(last);
        if (!found || obj > out.objective) {
            found = true;
            current[std::size_t(n) - 1] = last;
            out.x = current;
            out.objective = obj;
        }
    };

    const auto scan = [&](const auto& self, int depth, double acc,
                          double remaining) -> void {
        if (depth == n - 1) {
            leaf(acc, remaining);
            return;
        }
        const double capacity = double(n - 1 - depth); // later coordinates
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double rest = remaining - xs[i];
            if (rest < -feas_eps) break; // xs is increasing
            if (rest > capacity + feas_eps) continue;
            current[std::size_t(depth)] = xs[i];
            self(self, depth + 1, acc + fx[i], rest);
        }
    };
    scan(scan, 0, 0.0, M);

    if (!found) throw internal_error("grid scan found no feasible point");
    return out;
}

/// Grid-oracle solve packaged as a report; chosen summarizes the found
/// vector by its boundary counts and the implied interior mean.
inline SolveReport solve_with_oracle(const ProblemInstance& inst,
                                     const Tangency& tang, double step) {
    const auto t0 = std::chrono::steady_clock::now();
    GridResult g = grid_oracle(inst, step);

    KSolution chosen;
    chosen.label = Label::custom;
    for (double v : g.x) {
        if (std::abs(v) <= fold_eps)
            chosen.k0 += 1.0;
        else if (std::abs(v - 1.0) <= fold_eps)
            chosen.k1 += 1.0;
        else
            chosen.ky += 1.0;
    }
    if (chosen.ky > 0.0) chosen.y = (inst.M() - chosen.k1) / chosen.ky;
    chosen.objective = g.objective;
    chosen.feasible = true;

    SolveReport rep;
    detail::fill_report_common(rep, inst, tang, Algorithm::oracle, std::move(g.x));
    rep.candidates = {chosen};
    rep.chosen = chosen;
    rep.f_eval_count = g.f_evals;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace snk

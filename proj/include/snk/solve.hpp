#pragma once

#include <chrono>

#include "snk/kspace.hpp"
#include "snk/report.hpp"
#include "snk/tangency.hpp"
#include "snk/transform.hpp"

namespace snk {

/**
 * Integer solve in constant time after preprocessing: evaluates the
 * closed-form candidate set and reports the winner together with its
 * expanded coordinate vector. f_eval_count covers the candidate
 * evaluations only, not the bisection that produced tang.
 */
inline SolveReport solve_integer(const ProblemInstance& inst, const Tangency& tang) {
    const auto t0 = std::chrono::steady_clock::now();
    IntegerCandidates core = solve_integer_candidates(inst, tang);
    SolveReport rep;
    detail::fill_report_common(rep, inst, tang, Algorithm::constant,
                               expand(core.chosen, inst.n()));
    rep.candidates = std::move(core.candidates);
    rep.chosen = core.chosen;
    rep.f_eval_count = core.f_evals;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Convenience overload that runs preprocessing itself.
inline SolveReport solve_integer(const ProblemInstance& inst, double tol = 1e-10) {
    return solve_integer(inst, preprocess(inst.objective(), tol));
}

} // namespace snk

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/objective.hpp"
#include "snk/tangency.hpp"

namespace snk {

namespace detail {

inline void plot_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace detail

/**
 * Tab-separated plot data in two blocks separated by a blank line.
 *
 * Block 1 samples [0, 1] at `resolution` points: x, f(x), and the two
 * tangent lines t_r(x) = f(d_r) + f'(d_r) (x - d_r). Each tangent
 * touches the graph at d_r and passes through (r, f(r)).
 *
 * Block 2 covers a resolution x resolution grid of (k0, k1) in
 * [0, n]^2 for the instance's (n, M) with the implied interior value
 * and both reduced-gradient components, for stream-plot rendering.
 * Grid nodes without an interior block, or whose y leaves the eval
 * domain, carry nan in the derived columns.
 */
inline std::string emit_plot_data(const ProblemInstance& inst, const Tangency& tang,
                                  int resolution) {
    if (resolution < 2) throw parameter_error("plot resolution must be at least 2");
    const ObjectiveSpec& spec = inst.objective();
    const int n = inst.n();
    const double M = inst.M();
    const double nan = std::nan("");

    const auto tangent = [&](const TangencyData& t, double x) {
        return spec.value(t.d) + spec.deriv(t.d) * (x - t.d);
    };

    std::string out = "x\tf\ttangent_d0\ttangent_d1\n";
    for (int i = 0; i < resolution; ++i) {
        const double x = double(i) / double(resolution - 1);
        detail::plot_num(out, x);
        out += '\t';
        detail::plot_num(out, spec.value(x));
        out += '\t';
        detail::plot_num(out, tangent(tang.d0, x));
        out += '\t';
        detail::plot_num(out, tangent(tang.d1, x));
        out += '\n';
    }

    out += "\nk0\tk1\ty\tdF_dk0\tdF_dk1\n";
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const double k0 = double(n) * double(i) / double(resolution - 1);
            const double k1 = double(n) * double(j) / double(resolution - 1);
            const double ky = double(n) - k0 - k1;
            double y = nan, g0 = nan, g1 = nan;
            if (ky > fold_eps * std::max(1.0, double(n))) {
                y = (M - k1) / ky;
                if (spec.in_eval_domain(y)) {
                    const double fy = spec.value(y);
                    const double dfy = spec.deriv(y);
                    g0 = spec.value(0.0) + y * dfy - fy;
                    g1 = spec.value(1.0) + (y - 1.0) * dfy - fy;
                }
            }
            detail::plot_num(out, k0);
            out += '\t';
            detail::plot_num(out, k1);
            out += '\t';
            detail::plot_num(out, y);
            out += '\t';
            detail::plot_num(out, g0);
            out += '\t';
            detail::plot_num(out, g1);
            out += '\n';
        }
    }
    return out;
}

} // namespace snk

#pragma once

// Symmetric nonlinear continuous knapsack: maximize sum f(x_i) over
// x in [0,1]^n with sum x_i = M, for antisymmetric convex-then-concave
// f. Integer-count optima come from a constant-size candidate set once
// the tangency point d0 is located by bisection; an O(n^2) enumeration
// and an x-space grid scan serve as independent references.

#include "snk/enumerate.hpp"
#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/objective.hpp"
#include "snk/plot.hpp"
#include "snk/problem_file.hpp"
#include "snk/report.hpp"
#include "snk/solve.hpp"
#include "snk/tangency.hpp"
#include "snk/transform.hpp"

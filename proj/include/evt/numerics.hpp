#pragma once

#include <functional>
#include <vector>

#include "evt/errors.hpp"

namespace evt {

using Fn = std::function<double(double)>;

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 60;
};

// Globally adaptive quadrature: fixed 15-point closed (Lobatto) rule per
// panel, worst-panel-first bisection, error from rule-vs-halved-rule.
// Infinite endpoints are folded through t = x/(1+|x|).  Evaluations that
// come back non-finite (endpoint singularities, overflow in the fold)
// count as zero.  Deterministic for identical inputs.
double integrate(const Fn& f, double lo, double hi, const QuadratureSpec& spec = {});

// Same, with interior points the initial panels must not straddle.
// Breakpoints outside (lo, hi) are ignored.
double integrate(const Fn& f, double lo, double hi, const QuadratureSpec& spec,
                 const std::vector<double>& breakpoints);

// Bisection to bracket width <= tol; returns the bracket midpoint.  tol = 0
// bisects until the bracket cannot be split further (adjacent doubles).
// Throws BracketError when g(lo) and g(hi) have the same strict sign.
double find_root(const Fn& g, double lo, double hi, double tol);

struct SupNormResult {
    double x = 0.0;     // argmax found
    double value = 0.0; // max of |d| found; never below the grid max
};

// Max of |d| over [lo, hi]: grid pass at points map((i+0.5)/grid_points)
// followed by golden-section refinement of the three best brackets.
// `quantile_map` places the grid (typically a limit law's quantile);
// without one the grid is uniform on finite intervals and falls back to
// tan(pi*(p-1/2)) style folds on infinite ones.  First grid index wins ties.
SupNormResult sup_norm(const Fn& d, double lo, double hi, int grid_points,
                       const Fn& quantile_map = nullptr);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0; // in log space
};

// Ordinary least squares on (log n, log y).
FitResult fit_loglog(const std::vector<long long>& ns, const std::vector<double>& ys);

} // namespace evt

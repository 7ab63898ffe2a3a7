#pragma once

#include "evt/maxima.hpp"
#include "evt/maxstable.hpp"
#include "evt/numerics.hpp"

namespace evt {

// One (model, n, beta) measurement.  diff is what the rate experiments
// track; the remaining fields are the pieces the surrogate inequality
// diff <= m_constant * supnorm is assembled from, each measured
// independently by quadrature.
struct EntropyMeasurement {
    long long n = 0;
    double beta = 0.0;
    double H_gn = 0.0;    // order-beta entropy of the normalized maximum
    double H_limit = 0.0; // closed form for the limit law
    double diff = 0.0;    // |H_gn - H_limit|
    double supnorm = 0.0; // sup_x |g_n(x) - g(x)|
    double lp_integral = 0.0;      // int |g_n - g|^(beta-1)
    double ig_beta = 0.0;          // int g^beta
    double hypothesis_ratio = 0.0; // int |g_n^beta - g^beta| / ig_beta
    bool hypothesis_ok = false;    // ratio < 1, the log-expansion regime
    double m_constant = 0.0;       // 2 lp_integral / ((beta-1) ig_beta)
};

// (1/(1-beta)) log int pdf^beta over (lo, hi).  beta in [1.05, 16];
// NonConvergence of the power integral surfaces as DivergentIntegral.
double renyi_entropy(const Fn& pdf, double lo, double hi, double beta,
                     const QuadratureSpec& spec = {});

// -int pdf log pdf over (lo, hi), with 0 log 0 read as 0.
double shannon_entropy(const Fn& pdf, double lo, double hi,
                       const QuadratureSpec& spec = {});

// Full measurement of nm against its limit law.  Integrals get panel
// breaks at the limit's 1%/50%/99% quantiles and at the edges of g_n's
// support; the sup-norm grid is placed by the limit quantile.
EntropyMeasurement entropy_gap(const NormalizedMaximum& nm, double beta,
                               const QuadratureSpec& spec = {},
                               int sup_grid_points = 1024);

} // namespace evt

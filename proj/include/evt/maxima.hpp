#pragma once

#include "evt/distributions.hpp"
#include "evt/norming.hpp"

namespace evt {

struct NormalizedMaximum {
    DistributionModel model;
    long long n = 2;
    NormingPair norming;
};

// Exact self-norming for the max-stable parents, domain norming otherwise.
NormalizedMaximum make_normalized(const DistributionModel& model, long long n);
NormalizedMaximum make_normalized(const DistributionModel& model, long long n,
                                  const NormingPair& pair);

// Density of (M_n - b_n)/a_n:  n a f(a x + b) F^{n-1}(a x + b).
// The power goes through exp((n-1) log1p(-sf)); zero outside the support.
double gn_density(const NormalizedMaximum& nm, double x);

// F^n(a_n x + b_n), tail-stable the same way.
double gn_cdf(const NormalizedMaximum& nm, double x);

// exp(-(1 + z x)^{-1/z}) where 1 + z x > 0 (signed z; z -> 0 recovers the
// Gumbel law); 0 below the support for z > 0, 1 above it for z < 0.
double penultimate_cdf(double z, double x);

struct SandwichReport {
    long long n = 0;
    double x = 0.0;
    NormingPair norming;        // pair the bounds are stated for
    double h_used = 0.0;        // envelope value at the stated point
    bool in_support = false;    // h_used * |x| < 1
    double lower = 0.0, fn = 0.0, upper = 0.0;
    double lower_margin = 0.0;  // fn - lower
    double upper_margin = 0.0;  // upper - fn
    bool ordered = false;
};

// Pointwise check of  pen(h, x) <= F^n(a x + b) <= pen(-h, x)  with
// h = h_env(b_n) for x > 0 and h = h_env(a_n x + b_n) for x < 0.  The
// bounds are provable for the norming -log F(b_n) = 1/n, a_n = u_vm(b_n),
// so that pair is constructed here and reported, whatever nm carries.
SandwichReport sandwich_check(const NormalizedMaximum& nm, double x);

} // namespace evt

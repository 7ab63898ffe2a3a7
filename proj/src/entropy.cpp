#include "evt/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace evt {

namespace {

void require_beta(double beta) {
    if (!(beta >= 1.05 && beta <= 16.0))
        throw ParamError("beta must lie in [1.05, 16]");
}

double power_integral(const Fn& pdf, double lo, double hi, double beta,
                      const QuadratureSpec& spec, const std::vector<double>& cuts) {
    Fn integrand = [&pdf, beta](double x) {
        double v = pdf(x);
        return v > 0.0 ? std::pow(v, beta) : 0.0;
    };
    try {
        return integrate(integrand, lo, hi, spec, cuts);
    } catch (const NonConvergence& e) {
        throw DivergentIntegral(std::string("power integral did not settle: ") + e.what());
    }
}

} // namespace

double renyi_entropy(const Fn& pdf, double lo, double hi, double beta,
                     const QuadratureSpec& spec) {
    require_beta(beta);
    double ib = power_integral(pdf, lo, hi, beta, spec, {});
    if (!(ib > 0.0) || !std::isfinite(ib))
        throw DivergentIntegral("power integral is not positive and finite");
    return std::log(ib) / (1.0 - beta);
}

double shannon_entropy(const Fn& pdf, double lo, double hi, const QuadratureSpec& spec) {
    Fn integrand = [&pdf](double x) {
        double v = pdf(x);
        return v > 0.0 ? -v * std::log(v) : 0.0;
    };
    try {
        return integrate(integrand, lo, hi, spec);
    } catch (const NonConvergence& e) {
        throw DivergentIntegral(std::string("entropy integral did not settle: ") + e.what());
    }
}

EntropyMeasurement entropy_gap(const NormalizedMaximum& nm, double beta,
                               const QuadratureSpec& spec, int sup_grid_points) {
    require_beta(beta);
    if (sup_grid_points < 16) throw ParamError("sup_grid_points < 16");
    const DistributionModel& m = nm.model;
    MaxStableLaw law = limit_for(m);

    // the convergence statements assume int f^beta < inf for the parent;
    // probe it cheaply so a diverging model fails here, not mid-sweep
    {
        QuadratureSpec probe{1e-6, 1e-4, 48};
        power_integral(m.pdf, m.left_end, m.right_end, beta, probe, {});
    }

    double a = nm.norming.a;
    double b = nm.norming.b;
    double x_lo = std::isinf(m.left_end) ? m.left_end : (m.left_end - b) / a;
    double x_hi = std::isinf(m.right_end) ? m.right_end : (m.right_end - b) / a;
    double lo = std::min(law.left_end(), x_lo);
    double hi = std::max(law.right_end(), x_hi);
    std::vector<double> cuts{law.quantile(0.01), law.quantile(0.5), law.quantile(0.99),
                             x_lo, x_hi};

    Fn gn = [&nm](double x) { return gn_density(nm, x); };
    Fn g = [law](double x) { return law.pdf(x); };

    EntropyMeasurement em;
    em.n = nm.n;
    em.beta = beta;

    double in_beta = power_integral(gn, lo, hi, beta, spec, cuts);
    if (!(in_beta > 0.0) || !std::isfinite(in_beta))
        throw DivergentIntegral("power integral of g_n is not positive and finite");
    em.ig_beta = power_integral(g, lo, hi, beta, spec, cuts);

    em.H_gn = std::log(in_beta) / (1.0 - beta);
    em.H_limit = renyi_entropy_closed(law, beta);
    em.diff = std::fabs(em.H_gn - em.H_limit);

    Fn delta = [&gn, &g](double x) { return gn(x) - g(x); };
    em.supnorm = sup_norm(delta, law.left_end(), law.right_end(), sup_grid_points,
                          [law](double p) { return law.quantile(p); })
                     .value;

    // the two remaining integrals are diagnostics over g_n - g.  wherever the
    // densities agree to ~1e-13 relative the difference is cancellation noise,
    // and a fractional exponent beta - 1 turns that jitter into O(1) integrand
    // wiggle no splitting can settle below an error sum of ~1e-4; heavy tails
    // can even make the lp integral infinite.  so: measure at a tolerance the
    // data supports, and record a diverging diagnostic as infinity, which
    // fails the hypothesis flag instead of aborting the measurement.
    QuadratureSpec diag{std::max(spec.abs_tol, 1e-8), std::max(spec.rel_tol, 1e-4),
                        spec.max_depth};
    double inf = std::numeric_limits<double>::infinity();

    double ex = beta - 1.0;
    // heavy tails: g_n - g ~ x^{-(2 alpha + 1)}/n, so the lp integrand decays
    // like x^{-(2 alpha + 1)(beta - 1)} and the integral is infinite unless
    // that exponent beats 1.  skip the doomed quadrature outright.
    bool lp_infinite =
        m.domain == Domain::Frechet && (2.0 * m.alpha + 1.0) * ex <= 1.0;
    Fn lp_fn = [&delta, ex](double x) { return std::pow(std::fabs(delta(x)), ex); };
    if (lp_infinite) {
        em.lp_integral = inf;
    } else {
        try {
            em.lp_integral = integrate(lp_fn, lo, hi, diag, cuts);
        } catch (const NonConvergence&) {
            em.lp_integral = inf;
        }
    }

    Fn cross_fn = [&gn, &g, beta](double x) {
        double vn = gn(x);
        double vg = g(x);
        double pn = vn > 0.0 ? std::pow(vn, beta) : 0.0;
        double pg = vg > 0.0 ? std::pow(vg, beta) : 0.0;
        return std::fabs(pn - pg);
    };
    double cross = inf;
    try {
        cross = integrate(cross_fn, lo, hi, diag, cuts);
    } catch (const NonConvergence&) {
    }

    em.hypothesis_ratio = cross / em.ig_beta;
    em.hypothesis_ok = em.hypothesis_ratio < 1.0;
    em.m_constant = 2.0 * em.lp_integral / ((beta - 1.0) * em.ig_beta);
    return em;
}

} // namespace evt

#pragma once

#include <string>
#include <vector>

#include "evt/entropy.hpp"
#include "evt/norming.hpp"

namespace evt {

// One n of a sweep.  Everything downstream consumers need is flattened
// here so reports serialize without chasing pointers.
struct RateRow {
    long long n = 0;
    double a_n = 0.0;
    double b_n = 0.0;
    double h_env = 0.0; // envelope at the norming point (a_n or b_n by domain)
    double supnorm = 0.0;
    double entropy_diff = 0.0;
    double predicted = 0.0;
    double H_gn = 0.0;
    double H_limit = 0.0;
    double lp_integral = 0.0;
    double hypothesis_ratio = 0.0;
    bool hypothesis_ok = false;
    double m_constant = 0.0;
    double xi_n = 0.0; // -log F(xi_n) = n^{-1/2}
    double t_n = 0.0;  // (xi_n - b_n) / a_n
};

struct BoundCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0; // bound - measured unless the note says otherwise
    std::string note;
};

struct RateReport {
    std::string model_name;
    double beta = 0.0;
    std::vector<RateRow> rows; // ascending n
    FitResult fitted_supnorm;
    FitResult fitted_entropy;
    double predicted_slope = 0.0;
    bool degenerate = false; // every supnorm row at float-noise level
    std::string note;
    std::vector<BoundCheck> bound_checks;
};

struct ExperimentOptions {
    QuadratureSpec quad;
    int sup_grid_points = 1024;
    int workers = 1;
};

// Envelope terms at the norming point, unit constants:
//   Frechet:  h_env(a_n) + n e^{-sqrt n}
//   Gumbel:   h_env(b_n) + log(1 + h_env(b_n)) + n e^{-sqrt n}
double predicted_envelope(const DistributionModel& model, long long n);

// Sweeps a geometric n_grid (>= 5 points, entries in [2, 1e6], strictly
// increasing), measures entropy gap and sup-norm per n, fits log-log
// slopes unless the model is an exact family (then fits are skipped and
// the report is flagged degenerate), and attaches the uniform-bound
// checks at n in {1e3, 1e4}.  Rows may be computed by opts.workers
// threads; the report is bit-identical for any worker count.
RateReport run_rate_experiment(const DistributionModel& model, double beta,
                               const std::vector<long long>& n_grid,
                               const ExperimentOptions& opts = {});

// Runs every uniform bound on its stated domain: the penultimate-family
// distance sweep, and per n the cdf distance bound, the cdf sandwich
// spots, and the scale-ratio sandwich (Gumbel domain), or the tail
// constant report (Frechet domain).  Failures are data, never thrown.
std::vector<BoundCheck> verify_all_bounds(const DistributionModel& model,
                                          const std::vector<long long>& ns);

} // namespace evt

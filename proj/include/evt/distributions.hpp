#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "evt/errors.hpp"

namespace evt {

enum class Domain { Frechet, Gumbel, Weibull, None };

// Parent distribution with everything the rate machinery needs.  sf is a
// first-class field: 1-cdf loses all tail precision where these models
// actually get evaluated.  Immutable after construction.
struct DistributionModel {
    std::string name; // canonical spec string, e.g. "pareto(alpha=1)"
    std::map<std::string, double> params;
    std::function<double(double)> cdf;       // F
    std::function<double(double)> sf;        // 1 - F, computed directly
    std::function<double(double)> pdf;       // f
    std::function<double(double)> pdf_deriv; // f'
    std::function<double(double)> quantile;  // F^{-1} on (0,1)
    double left_end = 0.0;
    double right_end = 0.0;
    Domain domain = Domain::None;
    double alpha = 0.0;        // tail index when tagged Frechet/Weibull
    bool exact_family = false; // F^n(a_n x + b_n) equals the limit law exactly
};

DistributionModel make_pareto(double alpha);       // F = 1 - x^{-a} on (1,inf)
DistributionModel make_burr(double alpha);         // F = 1 - (1+x)^{-a} on (0,inf)
DistributionModel make_half_cauchy();              // F = (2/pi) atan x on (0,inf)
DistributionModel make_exponential();              // F = 1 - e^{-x} on (0,inf)
DistributionModel make_standard_gumbel();          // F = exp(-e^{-x})
DistributionModel make_standard_frechet(double alpha); // F = exp(-x^{-a}) on (0,inf)
DistributionModel make_standard_normal();

// Accepts "pareto(alpha=2)", "burr(alpha=2)", "half_cauchy", "exponential",
// "gumbel", "frechet(alpha=1)", "normal"; case-insensitive, spaces ignored.
DistributionModel parse_model(const std::string& spec);

// The fixed set the experiments and diagnostics sweep over.
std::vector<DistributionModel> full_catalog();

// -log F(x) from sf alone; series for sf < 1e-8 where log1p(-sf) cancels.
double neg_log_cdf(const DistributionModel& m, double x);

} // namespace evt

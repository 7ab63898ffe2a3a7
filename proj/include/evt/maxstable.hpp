#pragma once

#include "evt/distributions.hpp"

namespace evt {

enum class LawKind { Frechet, Weibull, Gumbel };

// One of the three limit laws for normalized maxima.
struct MaxStableLaw {
    LawKind kind = LawKind::Gumbel;
    double alpha = 0.0; // shape for Frechet/Weibull, unused for Gumbel

    double cdf(double x) const;
    double pdf(double x) const;
    double quantile(double p) const;
    // support endpoints (Frechet: (0,inf); Weibull: (-inf,0); Gumbel: all reals)
    double left_end() const;
    double right_end() const;
};

MaxStableLaw frechet_law(double alpha);
MaxStableLaw weibull_law(double alpha);
MaxStableLaw gumbel_law();

// Limit law the model's tag selects.  Throws NoDomainError on untagged models.
MaxStableLaw limit_for(const DistributionModel& model);

// Order-beta Renyi entropy of the law in closed form (beta > 1).  Throws
// ParamError for beta <= 1 and DivergentIntegral where the power integral
// genuinely diverges (Weibull with beta - (beta-1)/alpha <= 0).
double renyi_entropy_closed(const MaxStableLaw& law, double beta);

} // namespace evt

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "evt/distributions.hpp"

namespace evt {

struct NormingPair {
    long long n = 0;
    double a = 1.0; // scale, > 0
    double b = 0.0; // location
};

struct RemainderEvaluation {
    double t = 0.0;
    double h_raw = 0.0; // pointwise remainder
    double h_env = 0.0; // nonincreasing majorant of |h_raw| over [t, r(F))
};

// a_n = F^{-1}(1-1/n), b_n = 0.  Fréchet-tagged models only.
NormingPair norming_frechet(const DistributionModel& model, long long n);

// b_n = F^{-1}(1-1/n), a_n = auxiliary_u(b_n).  Gumbel-tagged models only.
NormingPair norming_gumbel(const DistributionModel& model, long long n);

// Dispatch on the domain tag.
NormingPair norming_for(const DistributionModel& model, long long n);

// Exact self-norming of the max-stable parents: Gumbel (1, log n),
// Fréchet(alpha) (n^{1/alpha}, 0).  DomainMismatch for anything else.
NormingPair exact_norming(const DistributionModel& model, long long n);

// The norming under which the uniform and sandwich bounds are provable:
// b_n solves -log F(b_n) = 1/n and a_n = vonmises_u(b_n).  Gumbel domain.
NormingPair theorem_norming(const DistributionModel& model, long long n);

// u(t) = int_t^{r(F)} sf(s) ds / sf(t); truncated at the 1-1e-14 quantile
// with a Pareto-tail correction when r(F) = inf.
double auxiliary_u(const DistributionModel& model, double t);

// u(t) = -F(t) log F(t) / f(t); the reciprocal-hazard form of the same scale.
double vonmises_u(const DistributionModel& model, double t);

// Pointwise remainder:
//   Gumbel domain:  -log F - [1 - F f' log F / f^2]   (tail-stable -log F)
//   Frechet domain: t f / (F (1-F)) - alpha
double remainder_raw(const DistributionModel& model, double t);

// Discrete majorant of |h_raw| on a fixed 512-point quantile ladder
// reaching 1-1e-12; env(t) = max(|h_raw(t)|, suffix max of the ladder at t).
class RemainderEnvelope {
public:
    explicit RemainderEnvelope(const DistributionModel& model, int ladder_points = 512);

    double raw(double t) const;
    double env(double t) const;
    RemainderEvaluation eval(double t) const;

private:
    DistributionModel model_;
    std::vector<double> ts_;
    std::vector<double> suffix_;
};

// Shared immutable envelope per model name; built once, then read-only.
std::shared_ptr<const RemainderEnvelope> envelope_for(const DistributionModel& model);

RemainderEvaluation remainder_gumbel(const DistributionModel& model, double t);
RemainderEvaluation remainder_frechet(const DistributionModel& model, double t);

struct RatioCondition {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    double witness = 0.0; // the t, x or n where the worst case occurred
};

struct RatioConditionReport {
    long long n = 0;
    std::vector<RatioCondition> checks;
};

// Numerically probes the hypotheses behind the Gumbel-domain rate theorem
// (u/(b h) <= k, envelope contraction, |u'| <= h) or, for the Fréchet
// domain, the envelope tail-ratio decay h(a_n x)/h(a_n) <= x^{-rho} on
// [delta/a_n, 1] and h(delta) < alpha.  Failures are reported, not thrown;
// the conditions genuinely fail for some classical models.
RatioConditionReport check_ratio_conditions(const DistributionModel& model, long long n,
                                            double k_probe, double c, double b, double d,
                                            double rho = 1.0, double delta = 10.0);

} // namespace evt

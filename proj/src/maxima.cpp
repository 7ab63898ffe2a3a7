#include "evt/maxima.hpp"

#include <cmath>

namespace evt {

NormalizedMaximum make_normalized(const DistributionModel& model, long long n) {
    if (model.exact_family) return NormalizedMaximum{model, n, exact_norming(model, n)};
    return NormalizedMaximum{model, n, norming_for(model, n)};
}

NormalizedMaximum make_normalized(const DistributionModel& model, long long n,
                                  const NormingPair& pair) {
    if (n < 2) throw DomainError("make_normalized: n < 2");
    if (!(pair.a > 0.0)) throw DomainError("make_normalized: a_n <= 0");
    return NormalizedMaximum{model, n, pair};
}

double gn_density(const NormalizedMaximum& nm, double x) {
    double y = nm.norming.a * x + nm.norming.b;
    if (!(y > nm.model.left_end) || y >= nm.model.right_end) return 0.0;
    double f = nm.model.pdf(y);
    if (!(f > 0.0)) return 0.0;
    double logpow = (nm.n - 1) * std::log1p(-nm.model.sf(y));
    return nm.n * nm.norming.a * f * std::exp(logpow);
}

double gn_cdf(const NormalizedMaximum& nm, double x) {
    double y = nm.norming.a * x + nm.norming.b;
    if (y <= nm.model.left_end) return 0.0;
    if (y >= nm.model.right_end) return 1.0;
    return std::exp(nm.n * std::log1p(-nm.model.sf(y)));
}

double penultimate_cdf(double z, double x) {
    if (z == 0.0) return std::exp(-std::exp(-x));
    double w = 1.0 + z * x;
    if (w <= 0.0) return z > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::exp(-std::log1p(z * x) / z));
}

SandwichReport sandwich_check(const NormalizedMaximum& nm, double x) {
    if (nm.model.domain != Domain::Gumbel)
        throw DomainMismatch("sandwich_check: model '" + nm.model.name + "' is not Gumbel-tagged");
    auto env = envelope_for(nm.model);
    SandwichReport r;
    r.n = nm.n;
    r.x = x;
    r.norming = theorem_norming(nm.model, nm.n);
    double point = (x > 0.0) ? r.norming.b : r.norming.a * x + r.norming.b;
    r.h_used = env->env(point);
    r.in_support = r.h_used * std::fabs(x) < 1.0;
    NormalizedMaximum shifted{nm.model, nm.n, r.norming};
    r.fn = gn_cdf(shifted, x);
    r.lower = penultimate_cdf(r.h_used, x);
    r.upper = penultimate_cdf(-r.h_used, x);
    r.lower_margin = r.fn - r.lower;
    r.upper_margin = r.upper - r.fn;
    r.ordered = r.in_support && r.lower_margin >= 0.0 && r.upper_margin >= 0.0;
    return r;
}

} // namespace evt

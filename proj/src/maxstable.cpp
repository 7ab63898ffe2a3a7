#include "evt/maxstable.hpp"

#include <cmath>
#include <limits>

namespace evt {

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

double MaxStableLaw::cdf(double x) const {
    switch (kind) {
    case LawKind::Frechet:
        if (x <= 0.0) return 0.0;
        return std::exp(-std::exp(-alpha * std::log(x)));
    case LawKind::Weibull:
        if (x >= 0.0) return 1.0;
        return std::exp(-std::exp(alpha * std::log(-x)));
    case LawKind::Gumbel:
    default:
        return std::exp(-std::exp(-x));
    }
}

double MaxStableLaw::pdf(double x) const {
    switch (kind) {
    case LawKind::Frechet: {
        if (x <= 0.0) return 0.0;
        double lx = std::log(x);
        return alpha * std::exp(-(alpha + 1.0) * lx - std::exp(-alpha * lx));
    }
    case LawKind::Weibull: {
        if (x >= 0.0) return 0.0;
        double ly = std::log(-x);
        return alpha * std::exp((alpha - 1.0) * ly - std::exp(alpha * ly));
    }
    case LawKind::Gumbel:
    default:
        return std::exp(-x - std::exp(-x));
    }
}

double MaxStableLaw::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("law quantile: p outside (0,1)");
    double t = -std::log(p); // -log p, positive
    switch (kind) {
    case LawKind::Frechet:
        return std::exp(-std::log(t) / alpha);
    case LawKind::Weibull:
        return -std::exp(std::log(t) / alpha);
    case LawKind::Gumbel:
    default:
        return -std::log(t);
    }
}

double MaxStableLaw::left_end() const {
    switch (kind) {
    case LawKind::Frechet:
        return 0.0;
    case LawKind::Weibull:
    case LawKind::Gumbel:
    default:
        return -kInf;
    }
}

double MaxStableLaw::right_end() const {
    switch (kind) {
    case LawKind::Weibull:
        return 0.0;
    case LawKind::Frechet:
    case LawKind::Gumbel:
    default:
        return kInf;
    }
}

MaxStableLaw frechet_law(double alpha) {
    if (!(alpha > 0.0)) throw ParamError("frechet law: alpha <= 0");
    return MaxStableLaw{LawKind::Frechet, alpha};
}

MaxStableLaw weibull_law(double alpha) {
    if (!(alpha > 0.0)) throw ParamError("weibull law: alpha <= 0");
    return MaxStableLaw{LawKind::Weibull, alpha};
}

MaxStableLaw gumbel_law() { return MaxStableLaw{LawKind::Gumbel, 0.0}; }

MaxStableLaw limit_for(const DistributionModel& model) {
    switch (model.domain) {
    case Domain::Frechet:
        return frechet_law(model.alpha);
    case Domain::Weibull:
        return weibull_law(model.alpha);
    case Domain::Gumbel:
        return gumbel_law();
    case Domain::None:
    default:
        throw NoDomainError("limit_for: model '" + model.name + "' carries no domain tag");
    }
}

double renyi_entropy_closed(const MaxStableLaw& law, double beta) {
    if (!(beta > 1.0)) throw ParamError("renyi_entropy_closed: beta <= 1");
    // integral of pdf^beta reduces to a Gamma integral after u-substitution:
    //   Gumbel:      Gamma(b) b^{-b}
    //   Frechet(a):  a^{b-1} Gamma(s) b^{-s},  s = b + (b-1)/a
    //   Weibull(a):  a^{b-1} Gamma(s) b^{-s},  s = b - (b-1)/a  (needs s > 0)
    double log_integral;
    switch (law.kind) {
    case LawKind::Gumbel:
        log_integral = std::lgamma(beta) - beta * std::log(beta);
        break;
    case LawKind::Frechet: {
        double s = beta + (beta - 1.0) / law.alpha;
        log_integral = (beta - 1.0) * std::log(law.alpha) + std::lgamma(s) - s * std::log(beta);
        break;
    }
    case LawKind::Weibull:
    default: {
        double s = beta - (beta - 1.0) / law.alpha;
        if (!(s > 0.0))
            throw DivergentIntegral("renyi_entropy_closed: weibull power integral diverges");
        log_integral = (beta - 1.0) * std::log(law.alpha) + std::lgamma(s) - s * std::log(beta);
        break;
    }
    }
    return log_integral / (1.0 - beta);
}

} // namespace evt

#include "evt/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "evt/numerics.hpp"

namespace evt {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kPi = 3.14159265358979323846;

void require_prob(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("quantile: p outside (0,1)");
}

std::string format_alpha(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    return buf;
}

} // namespace

DistributionModel make_pareto(double alpha) {
    if (!(alpha > 0.0)) throw ParamError("pareto: alpha <= 0");
    DistributionModel m;
    m.name = "pareto(alpha=" + format_alpha(alpha) + ")";
    m.params["alpha"] = alpha;
    double a = alpha;
    m.sf = [a](double x) { return x <= 1.0 ? 1.0 : std::exp(-a * std::log(x)); };
    m.cdf = [a](double x) { return x <= 1.0 ? 0.0 : -std::expm1(-a * std::log(x)); };
    m.pdf = [a](double x) { return x < 1.0 ? 0.0 : a * std::exp(-(a + 1.0) * std::log(x)); };
    m.pdf_deriv = [a](double x) {
        return x < 1.0 ? 0.0 : -a * (a + 1.0) * std::exp(-(a + 2.0) * std::log(x));
    };
    m.quantile = [a](double p) {
        require_prob(p);
        return std::exp(-std::log1p(-p) / a);
    };
    m.left_end = 1.0;
    m.right_end = kInf;
    m.domain = Domain::Frechet;
    m.alpha = alpha;
    return m;
}

DistributionModel make_burr(double alpha) {
    if (!(alpha > 0.0)) throw ParamError("burr: alpha <= 0");
    DistributionModel m;
    m.name = "burr(alpha=" + format_alpha(alpha) + ")";
    m.params["alpha"] = alpha;
    double a = alpha;
    m.sf = [a](double x) { return x <= 0.0 ? 1.0 : std::exp(-a * std::log1p(x)); };
    m.cdf = [a](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-a * std::log1p(x)); };
    m.pdf = [a](double x) { return x < 0.0 ? 0.0 : a * std::exp(-(a + 1.0) * std::log1p(x)); };
    m.pdf_deriv = [a](double x) {
        return x < 0.0 ? 0.0 : -a * (a + 1.0) * std::exp(-(a + 2.0) * std::log1p(x));
    };
    m.quantile = [a](double p) {
        require_prob(p);
        return std::expm1(-std::log1p(-p) / a);
    };
    m.left_end = 0.0;
    m.right_end = kInf;
    m.domain = Domain::Frechet;
    m.alpha = alpha;
    return m;
}

DistributionModel make_half_cauchy() {
    DistributionModel m;
    m.name = "half_cauchy";
    m.sf = [](double x) { return x <= 0.0 ? 1.0 : (2.0 / kPi) * std::atan(1.0 / x); };
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : (2.0 / kPi) * std::atan(x); };
    m.pdf = [](double x) { return x < 0.0 ? 0.0 : (2.0 / kPi) / (1.0 + x * x); };
    m.pdf_deriv = [](double x) {
        if (x < 0.0) return 0.0;
        double d = 1.0 + x * x;
        return -(4.0 / kPi) * x / (d * d);
    };
    m.quantile = [](double p) {
        require_prob(p);
        // cot form keeps precision as p -> 1
        return p <= 0.5 ? std::tan(kPi * p / 2.0) : 1.0 / std::tan(kPi * (1.0 - p) / 2.0);
    };
    m.left_end = 0.0;
    m.right_end = kInf;
    m.domain = Domain::Frechet;
    m.alpha = 1.0;
    return m;
}

DistributionModel make_exponential() {
    DistributionModel m;
    m.name = "exponential";
    m.sf = [](double x) { return x <= 0.0 ? 1.0 : std::exp(-x); };
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
    m.pdf = [](double x) { return x < 0.0 ? 0.0 : std::exp(-x); };
    m.pdf_deriv = [](double x) { return x < 0.0 ? 0.0 : -std::exp(-x); };
    m.quantile = [](double p) {
        require_prob(p);
        return -std::log1p(-p);
    };
    m.left_end = 0.0;
    m.right_end = kInf;
    m.domain = Domain::Gumbel;
    return m;
}

DistributionModel make_standard_gumbel() {
    DistributionModel m;
    m.name = "gumbel";
    m.sf = [](double x) { return -std::expm1(-std::exp(-x)); };
    m.cdf = [](double x) { return std::exp(-std::exp(-x)); };
    m.pdf = [](double x) { return std::exp(-x - std::exp(-x)); };
    m.pdf_deriv = [](double x) { return std::exp(-x - std::exp(-x)) * std::expm1(-x); };
    m.quantile = [](double p) {
        require_prob(p);
        return -std::log(-std::log1p(p - 1.0));
    };
    m.left_end = -kInf;
    m.right_end = kInf;
    m.domain = Domain::Gumbel;
    m.exact_family = true;
    return m;
}

DistributionModel make_standard_frechet(double alpha) {
    if (!(alpha > 0.0)) throw ParamError("frechet: alpha <= 0");
    DistributionModel m;
    m.name = "frechet(alpha=" + format_alpha(alpha) + ")";
    m.params["alpha"] = alpha;
    double a = alpha;
    auto power = [a](double x) { return std::exp(-a * std::log(x)); }; // x^{-a}
    m.sf = [power](double x) { return x <= 0.0 ? 1.0 : -std::expm1(-power(x)); };
    m.cdf = [power](double x) { return x <= 0.0 ? 0.0 : std::exp(-power(x)); };
    m.pdf = [a](double x) {
        if (x <= 0.0) return 0.0;
        double lx = std::log(x);
        return a * std::exp(-(a + 1.0) * lx - std::exp(-a * lx));
    };
    m.pdf_deriv = [a, power](double x) {
        if (x <= 0.0) return 0.0;
        double r = power(x);
        double lx = std::log(x);
        double f = a * std::exp(-(a + 1.0) * lx - r);
        return f * (a * r - (a + 1.0)) / x;
    };
    m.quantile = [a](double p) {
        require_prob(p);
        return std::exp(-std::log(-std::log1p(p - 1.0)) / a);
    };
    m.left_end = 0.0;
    m.right_end = kInf;
    m.domain = Domain::Frechet;
    m.alpha = alpha;
    m.exact_family = true;
    return m;
}

DistributionModel make_standard_normal() {
    DistributionModel m;
    m.name = "normal";
    const double inv_sqrt2 = 0.70710678118654752;
    const double inv_sqrt2pi = 0.39894228040143268;
    m.sf = [inv_sqrt2](double x) { return 0.5 * std::erfc(x * inv_sqrt2); };
    m.cdf = [inv_sqrt2](double x) { return 0.5 * std::erfc(-x * inv_sqrt2); };
    m.pdf = [inv_sqrt2pi](double x) { return inv_sqrt2pi * std::exp(-0.5 * x * x); };
    m.pdf_deriv = [inv_sqrt2pi](double x) { return -x * inv_sqrt2pi * std::exp(-0.5 * x * x); };
    auto cdf = m.cdf;
    auto sf = m.sf;
    m.quantile = [cdf, sf](double p) {
        require_prob(p);
        // bisect whichever tail keeps the residual well-scaled
        if (p <= 0.5)
            return find_root([&](double x) { return cdf(x) - p; }, -45.0, 0.0, 1e-13);
        return find_root([&](double x) { return (1.0 - p) - sf(x); }, 0.0, 45.0, 1e-13);
    };
    m.left_end = -kInf;
    m.right_end = kInf;
    m.domain = Domain::Gumbel;
    return m;
}

DistributionModel parse_model(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    std::string name = s;
    bool has_alpha = false;
    double alpha = 0.0;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw ParamError("model spec: missing ')': " + spec);
        name = s.substr(0, open);
        std::string args = s.substr(open + 1, s.size() - open - 2);
        auto eq = args.find('=');
        if (eq == std::string::npos || args.substr(0, eq) != "alpha")
            throw ParamError("model spec: expected alpha=<value>: " + spec);
        std::string val = args.substr(eq + 1);
        char* end = nullptr;
        alpha = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0')
            throw ParamError("model spec: bad alpha value: " + spec);
        has_alpha = true;
    }

    if (name == "pareto") {
        if (!has_alpha) throw ParamError("pareto requires alpha");
        return make_pareto(alpha);
    }
    if (name == "burr") {
        if (!has_alpha) throw ParamError("burr requires alpha");
        return make_burr(alpha);
    }
    if (name == "frechet") {
        if (!has_alpha) throw ParamError("frechet requires alpha");
        return make_standard_frechet(alpha);
    }
    if (has_alpha) throw ParamError("model takes no parameters: " + spec);
    if (name == "half_cauchy") return make_half_cauchy();
    if (name == "exponential") return make_exponential();
    if (name == "gumbel") return make_standard_gumbel();
    if (name == "normal") return make_standard_normal();
    throw ParamError("unknown model: " + spec);
}

std::vector<DistributionModel> full_catalog() {
    std::vector<DistributionModel> v;
    v.push_back(make_pareto(1.0));
    v.push_back(make_burr(2.0));
    v.push_back(make_half_cauchy());
    v.push_back(make_exponential());
    v.push_back(make_standard_gumbel());
    v.push_back(make_standard_frechet(1.0));
    v.push_back(make_standard_normal());
    return v;
}

double neg_log_cdf(const DistributionModel& m, double x) {
    double s = m.sf(x);
    if (s >= 1.0) return kInf;
    if (s <= 0.0) return 0.0;
    if (s < 1e-8) return s * (1.0 + s * (0.5 + s / 3.0));
    return -std::log1p(-s);
}

} // namespace evt

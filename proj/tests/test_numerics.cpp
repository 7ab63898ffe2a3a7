#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "evt/numerics.hpp"

namespace {

const double kPi = 3.14159265358979323846;

} // namespace

TEST_CASE("integrate is exact on polynomials the rule covers") {
    auto f = [](double x) { return std::pow(x, 20.0); };
    CHECK(evt::integrate(f, 0.0, 1.0) == doctest::Approx(1.0 / 21.0).epsilon(1e-14));

    auto g = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    // antiderivative x^4/4 - x^2 + x over [-2, 3]
    CHECK(evt::integrate(g, -2.0, 3.0) ==
          doctest::Approx((81.0 / 4.0 - 9.0 + 3.0) - (4.0 - 4.0 - 2.0)).epsilon(1e-14));
}

TEST_CASE("integrate handles smooth transcendental integrands") {
    CHECK(evt::integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(evt::integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate folds infinite intervals") {
    CHECK(evt::integrate([](double x) { return std::exp(-x); }, 0.0,
                         std::numeric_limits<double>::infinity()) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // the folded integrand has a nonzero limit at the fold ends, so this one
    // only reaches the accuracy it is asked for
    CHECK(evt::integrate([](double x) { return 1.0 / (1.0 + x * x); },
                         -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(),
                         evt::QuadratureSpec{1e-13, 1e-12, 60}) ==
          doctest::Approx(kPi).epsilon(1e-10));
    CHECK(evt::integrate([](double x) { return std::exp(-x * x); },
                         -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("breakpoints pin kinks so panels never straddle them") {
    auto f = [](double x) { return std::fabs(x); };
    double v = evt::integrate(f, -1.0, 1.0, evt::QuadratureSpec{}, {0.0});
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    // breakpoints outside the interval are ignored, not an error
    double w = evt::integrate(f, -1.0, 1.0, evt::QuadratureSpec{}, {-5.0, 0.0, 7.0});
    CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("integrate rejects bad input and genuine divergence") {
    CHECK_THROWS_AS(evt::integrate([](double) { return 1.0; }, 1.0, 1.0), evt::DomainError);
    CHECK_THROWS_AS(
        evt::integrate([](double) { return 1.0; }, 0.0, 1.0, evt::QuadratureSpec{-1.0, 1e-9, 60}),
        evt::DomainError);
    // 1/x is self-similar near 0: refinement never reduces the error estimate
    CHECK_THROWS_AS(evt::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0),
                    evt::NonConvergence);
}

TEST_CASE("find_root bisects to the requested width") {
    double r = evt::find_root([](double x) { return std::cos(x); }, 0.0, 2.0, 1e-12);
    CHECK(r == doctest::Approx(kPi / 2.0).epsilon(1e-11));

    // tol = 0 keeps going until the bracket endpoints are adjacent doubles
    double s = evt::find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 0.0);
    CHECK(s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    CHECK(evt::find_root([](double x) { return x; }, 0.0, 1.0, 1e-9) == 0.0);
    CHECK_THROWS_AS(evt::find_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0, 1e-9),
                    evt::BracketError);
    CHECK_THROWS_AS(evt::find_root([](double x) { return x; }, 1.0, -1.0, 1e-9),
                    evt::DomainError);
}

TEST_CASE("sup_norm refines past the grid") {
    auto r = evt::sup_norm([](double x) { return std::sin(x); }, 0.0, 10.0, 64);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    // 64 uniform points straddle both peaks; golden refinement must land on one
    CHECK(std::min(std::fabs(r.x - kPi / 2.0), std::fabs(r.x - 2.5 * kPi)) < 1e-4);

    // magnitude is what counts: a negative dip is still the sup of |f|
    auto dip = evt::sup_norm(
        [](double x) {
            double t = (x - 0.37) / 0.05;
            return -std::exp(-t * t);
        },
        0.0, 1.0, 32);
    CHECK(dip.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(dip.x == doctest::Approx(0.37).epsilon(1e-4));
}

TEST_CASE("sup_norm places its grid through a quantile map") {
    // Gumbel density through its own quantile map: peak e^{-1} at x = 0
    auto lambda = [](double x) { return std::exp(-x - std::exp(-x)); };
    auto qmap = [](double p) { return -std::log(-std::log(p)); };
    auto r = evt::sup_norm(lambda, -std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity(), 256, qmap);
    CHECK(r.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(std::fabs(r.x) < 1e-4);
}

TEST_CASE("fit_loglog recovers exponents from exact power laws") {
    std::vector<long long> ns;
    std::vector<double> ys;
    for (long long n = 16; n <= 16384; n *= 2) {
        ns.push_back(n);
        ys.push_back(3.0 * std::pow(double(n), -1.5));
    }
    auto fit = evt::fit_loglog(ns, ys);
    CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(fit.rms_residual < 1e-12);
}

TEST_CASE("fit_loglog rejects unusable data") {
    CHECK_THROWS_AS(evt::fit_loglog({10, 100}, {1.0}), evt::DomainError);
    CHECK_THROWS_AS(evt::fit_loglog({10}, {1.0}), evt::DomainError);
    CHECK_THROWS_AS(evt::fit_loglog({10, 100}, {1.0, -2.0}), evt::DomainError);
    CHECK_THROWS_AS(evt::fit_loglog({10, 100}, {1.0, 0.0}), evt::DomainError);
}

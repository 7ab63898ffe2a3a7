#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evt/maxima.hpp"
#include "evt/numerics.hpp"

TEST_CASE("normalized maximum density and cdf spot values") {
    auto pareto = evt::parse_model("pareto(alpha=1)");
    auto nm = evt::make_normalized(pareto, 10);
    CHECK(nm.norming.a == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(nm.norming.b == 0.0);
    // g_10(1) = 10 a f(a) F(a)^9 = 0.9^9, G_10(1) = 0.9^10
    CHECK(evt::gn_density(nm, 1.0) == doctest::Approx(0.387420489).epsilon(1e-9));
    CHECK(evt::gn_cdf(nm, 1.0) == doctest::Approx(0.34867844010000004).epsilon(1e-9));

    auto em = evt::make_normalized(evt::make_exponential(), 100);
    // 100 a e^{-b} F(b)^99 = a 0.99^99 with a within quadrature noise of 1
    CHECK(evt::gn_density(em, 0.0) == doctest::Approx(0.3697296376497268).epsilon(1e-9));
}

TEST_CASE("normalized maximum density integrates to one") {
    auto nm = evt::make_normalized(evt::make_exponential(), 100);
    double lo = -nm.norming.b / nm.norming.a;
    evt::QuadratureSpec spec{1e-12, 1e-10, 60};
    double mass = evt::integrate([&](double x) { return evt::gn_density(nm, x); }, lo,
                                 std::numeric_limits<double>::infinity(), spec, {0.0});
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("gn_cdf is the antiderivative of gn_density") {
    auto nm = evt::make_normalized(evt::make_exponential(), 100);
    double prev = 0.0;
    for (double x = -2.0; x <= 5.0; x += 0.5) {
        double c = evt::gn_cdf(nm, x);
        CHECK(c >= prev);
        prev = c;
    }
    for (double x : {-1.0, -0.3, 0.5, 1.5, 3.0}) {
        double h = 1e-6 * std::max(1.0, std::fabs(x));
        double fd = (evt::gn_cdf(nm, x + h) - evt::gn_cdf(nm, x - h)) / (2.0 * h);
        CHECK(fd == doctest::Approx(evt::gn_density(nm, x)).epsilon(1e-5));
    }
    // zero outside the support, one at the right end
    CHECK(evt::gn_density(nm, -10.0) == 0.0);
    CHECK(evt::gn_cdf(nm, -10.0) == 0.0);
    CHECK(evt::gn_cdf(nm, 1e9) == 1.0);
}

TEST_CASE("penultimate cdf covers all three shapes") {
    CHECK(evt::penultimate_cdf(0.0, 1.0) ==
          doctest::Approx(0.6922006275553464).epsilon(1e-12));
    CHECK(evt::penultimate_cdf(0.5, 1.0) ==
          doctest::Approx(0.6411803884299546).epsilon(1e-12));
    // outside the support: hard zero below (z > 0), hard one above (z < 0)
    CHECK(evt::penultimate_cdf(0.5, -2.5) == 0.0);
    CHECK(evt::penultimate_cdf(-0.5, 2.5) == 1.0);
    // continuity as the shape parameter crosses zero
    CHECK(evt::penultimate_cdf(1e-12, 1.0) ==
          doctest::Approx(evt::penultimate_cdf(0.0, 1.0)).epsilon(1e-9));
    CHECK(evt::penultimate_cdf(-1e-12, 1.0) ==
          doctest::Approx(evt::penultimate_cdf(0.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("make_normalized picks the exact norming for stable parents") {
    auto g = evt::make_normalized(evt::make_standard_gumbel(), 10);
    CHECK(g.norming.a == 1.0);
    CHECK(g.norming.b == doctest::Approx(std::log(10.0)).epsilon(1e-15));

    auto f = evt::make_normalized(evt::make_standard_frechet(2.0), 16);
    CHECK(f.norming.a == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(f.norming.b == 0.0);

    evt::NormingPair pair{50, 2.0, 3.0};
    auto custom = evt::make_normalized(evt::make_exponential(), 50, pair);
    CHECK(custom.norming.a == 2.0);
    CHECK(custom.norming.b == 3.0);
    CHECK(custom.n == 50);

    CHECK_THROWS_AS(evt::make_normalized(evt::make_exponential(), 1), evt::DomainError);
    CHECK_THROWS_AS(evt::make_normalized(evt::make_exponential(), 1, pair), evt::DomainError);
    evt::NormingPair bad{50, -1.0, 0.0};
    CHECK_THROWS_AS(evt::make_normalized(evt::make_exponential(), 50, bad), evt::DomainError);
}

TEST_CASE("sandwich bounds hold pointwise for the exponential") {
    auto nm = evt::make_normalized(evt::make_exponential(), 1000);
    for (double x : {-1.0, 0.5, 1.0, 2.0}) {
        auto r = evt::sandwich_check(nm, x);
        INFO("x=" << x);
        CHECK(r.in_support);
        CHECK(r.ordered);
        CHECK(r.lower_margin > 0.0);
        CHECK(r.upper_margin > 0.0);
        CHECK(r.lower <= r.fn);
        CHECK(r.fn <= r.upper);
    }
    // the reported pair solves -log F(b) = 1/n
    auto r = evt::sandwich_check(nm, 1.0);
    CHECK(evt::neg_log_cdf(evt::make_exponential(), r.norming.b) ==
          doctest::Approx(1e-3).epsilon(1e-9));

    auto pareto = evt::make_normalized(evt::parse_model("pareto(alpha=1)"), 1000);
    CHECK_THROWS_AS(evt::sandwich_check(pareto, 1.0), evt::DomainMismatch);
}

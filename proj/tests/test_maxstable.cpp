#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "evt/maxstable.hpp"
#include "evt/numerics.hpp"

namespace {

double quad_renyi(const evt::MaxStableLaw& law, double beta) {
    double ib = evt::integrate(
        [&](double x) {
            double v = law.pdf(x);
            return v > 0.0 ? std::pow(v, beta) : 0.0;
        },
        law.left_end(), law.right_end(), evt::QuadratureSpec{1e-12, 1e-11, 60});
    return std::log(ib) / (1.0 - beta);
}

} // namespace

TEST_CASE("law constructors validate alpha") {
    CHECK_THROWS_AS(evt::frechet_law(0.0), evt::ParamError);
    CHECK_THROWS_AS(evt::frechet_law(-2.0), evt::ParamError);
    CHECK_THROWS_AS(evt::weibull_law(0.0), evt::ParamError);
}

TEST_CASE("closed-form spot values of the laws") {
    auto gum = evt::gumbel_law();
    CHECK(gum.cdf(1.0) == doctest::Approx(0.6922006275553463).epsilon(1e-14));
    CHECK(gum.pdf(0.0) == doctest::Approx(0.3678794411714423).epsilon(1e-14));

    auto fr1 = evt::frechet_law(1.0);
    CHECK(fr1.cdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(fr1.pdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(fr1.cdf(0.0) == 0.0);

    auto wb2 = evt::weibull_law(2.0);
    CHECK(wb2.cdf(0.0) == 1.0);
    CHECK(wb2.cdf(-1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("quantiles invert the cdfs") {
    for (double p : {0.01, 0.2, 0.5, 0.9, 0.999}) {
        CHECK(evt::gumbel_law().cdf(evt::gumbel_law().quantile(p)) ==
              doctest::Approx(p).epsilon(1e-12));
        CHECK(evt::frechet_law(1.7).cdf(evt::frechet_law(1.7).quantile(p)) ==
              doctest::Approx(p).epsilon(1e-12));
        CHECK(evt::weibull_law(0.8).cdf(evt::weibull_law(0.8).quantile(p)) ==
              doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("supports are the documented intervals") {
    CHECK(evt::frechet_law(2.0).left_end() == 0.0);
    CHECK(std::isinf(evt::frechet_law(2.0).right_end()));
    CHECK(std::isinf(evt::weibull_law(2.0).left_end()));
    CHECK(evt::weibull_law(2.0).right_end() == 0.0);
    CHECK(std::isinf(evt::gumbel_law().left_end()));
    CHECK(std::isinf(evt::gumbel_law().right_end()));
}

TEST_CASE("order-2 entropy of gumbel and unit frechet is log 4") {
    double log4 = 1.3862943611198906;
    CHECK(evt::renyi_entropy_closed(evt::gumbel_law(), 2.0) ==
          doctest::Approx(log4).epsilon(1e-15));
    CHECK(evt::renyi_entropy_closed(evt::frechet_law(1.0), 2.0) ==
          doctest::Approx(log4).epsilon(1e-15));
}

TEST_CASE("closed forms agree with quadrature across shapes and orders") {
    for (double beta : {1.5, 2.0, 3.0, 5.0}) {
        CHECK(quad_renyi(evt::gumbel_law(), beta) ==
              doctest::Approx(evt::renyi_entropy_closed(evt::gumbel_law(), beta))
                  .epsilon(1e-9));
        for (double alpha : {0.5, 1.0, 2.0}) {
            INFO("frechet alpha=" << alpha << " beta=" << beta);
            CHECK(quad_renyi(evt::frechet_law(alpha), beta) ==
                  doctest::Approx(evt::renyi_entropy_closed(evt::frechet_law(alpha), beta))
                      .epsilon(1e-9));
        }
    }
    // weibull(2), beta=2: 0.5 log pi - 1.5 log 2, also matched by quadrature
    CHECK(evt::renyi_entropy_closed(evt::weibull_law(2.0), 2.0) ==
          doctest::Approx(0.4673558279152178).epsilon(1e-13));
    CHECK(quad_renyi(evt::weibull_law(2.0), 2.0) ==
          doctest::Approx(0.4673558279152178).epsilon(1e-9));
}

TEST_CASE("weibull entropy diverges when the power integral does") {
    // beta - (beta-1)/alpha <= 0 at alpha = 0.5, beta = 2
    CHECK_THROWS_AS(evt::renyi_entropy_closed(evt::weibull_law(0.5), 2.0),
                    evt::DivergentIntegral);
    CHECK_NOTHROW(evt::renyi_entropy_closed(evt::weibull_law(0.5), 1.5));
}

TEST_CASE("renyi order must exceed one") {
    CHECK_THROWS_AS(evt::renyi_entropy_closed(evt::gumbel_law(), 1.0), evt::ParamError);
    CHECK_THROWS_AS(evt::renyi_entropy_closed(evt::gumbel_law(), 0.5), evt::ParamError);
}

TEST_CASE("limit_for follows the domain tag") {
    auto expo = evt::parse_model("exponential");
    CHECK(evt::limit_for(expo).kind == evt::LawKind::Gumbel);

    auto pareto2 = evt::parse_model("pareto(alpha=2)");
    auto law = evt::limit_for(pareto2);
    CHECK(law.kind == evt::LawKind::Frechet);
    CHECK(law.alpha == doctest::Approx(2.0));

    auto untagged = expo;
    untagged.domain = evt::Domain::None;
    CHECK_THROWS_AS(evt::limit_for(untagged), evt::NoDomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "evt/distributions.hpp"
#include "evt/numerics.hpp"

namespace {

// probability levels the round-trip checks sweep
const double kLevels[] = {1e-6, 0.01, 0.2, 0.5, 0.9, 0.99, 1.0 - 1e-6};

} // namespace

TEST_CASE("catalog densities integrate to one") {
    for (const auto& m : evt::full_catalog()) {
        double mass = evt::integrate([&](double x) { return m.pdf(x); }, m.left_end,
                                     m.right_end, evt::QuadratureSpec{1e-12, 1e-10, 60});
        INFO(m.name);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("quantile and cdf round-trip across the catalog") {
    for (const auto& m : evt::full_catalog())
        for (double p : kLevels) {
            INFO(m.name << " p=" << p);
            CHECK(std::fabs(m.cdf(m.quantile(p)) - p) < 1e-10);
        }
}

TEST_CASE("sf complements cdf where both carry precision") {
    for (const auto& m : evt::full_catalog())
        for (double p : {0.2, 0.5, 0.9}) {
            double x = m.quantile(p);
            INFO(m.name << " p=" << p);
            CHECK(m.cdf(x) + m.sf(x) == doctest::Approx(1.0).epsilon(1e-14));
        }
}

TEST_CASE("pdf matches the cdf by finite differences") {
    for (const auto& m : evt::full_catalog())
        for (double p : {0.2, 0.5, 0.9}) {
            double x = m.quantile(p);
            double h = 1e-6 * (1.0 + std::fabs(x));
            double fd = (m.cdf(x + h) - m.cdf(x - h)) / (2.0 * h);
            INFO(m.name << " x=" << x);
            CHECK(fd == doctest::Approx(m.pdf(x)).epsilon(1e-6));
        }
}

TEST_CASE("pdf_deriv matches the pdf by finite differences") {
    for (const auto& m : evt::full_catalog())
        for (double p : {0.2, 0.5, 0.9}) {
            double x = m.quantile(p);
            double h = 1e-6 * (1.0 + std::fabs(x));
            double fd = (m.pdf(x + h) - m.pdf(x - h)) / (2.0 * h);
            double scale = std::max(std::fabs(m.pdf_deriv(x)), m.pdf(x));
            INFO(m.name << " x=" << x);
            CHECK(std::fabs(fd - m.pdf_deriv(x)) / scale < 1e-5);
        }
}

TEST_CASE("normal tail values against frozen references") {
    auto normal = evt::make_standard_normal();
    CHECK(normal.sf(6.0) == doctest::Approx(9.865876450376981e-10).epsilon(1e-12));
    // reference evaluated at the double nearest 0.999999, not the decimal
    CHECK(normal.quantile(1.0 - 1e-6) == doctest::Approx(4.753424308817088).epsilon(5e-12));
    CHECK(normal.quantile(0.999) == doctest::Approx(3.090232306167813).epsilon(1e-12));
    CHECK(normal.pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * 3.14159265358979323846))
                                 .epsilon(1e-14));
}

TEST_CASE("neg_log_cdf keeps precision where cdf saturates") {
    auto expo = evt::make_exponential();
    // at x = 40 the cdf rounds to 1 exactly; -log F must still resolve e^{-40}
    CHECK(expo.cdf(40.0) == 1.0);
    CHECK(evt::neg_log_cdf(expo, 40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-13));
    // moderate x agrees with the direct formula
    CHECK(evt::neg_log_cdf(expo, 1.0) ==
          doctest::Approx(-std::log(expo.cdf(1.0))).epsilon(1e-13));
}

TEST_CASE("gumbel parent hits closed-form spots") {
    auto g = evt::make_standard_gumbel();
    CHECK(g.cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(g.pdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(g.quantile(0.9) == doctest::Approx(-std::log(-std::log(0.9))).epsilon(1e-14));
}

TEST_CASE("half_cauchy parent hits closed-form spots") {
    auto hc = evt::make_half_cauchy();
    CHECK(hc.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(hc.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    // sf(x) * x -> 2/pi far out
    CHECK(hc.sf(1e4) * 1e4 ==
          doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-4));
}

TEST_CASE("parse_model accepts the documented spellings") {
    CHECK(evt::parse_model("pareto(alpha=2)").alpha == doctest::Approx(2.0));
    CHECK(evt::parse_model("  Pareto( Alpha = 2 )  ").alpha == doctest::Approx(2.0));
    CHECK(evt::parse_model("exponential").domain == evt::Domain::Gumbel);
    CHECK(evt::parse_model("frechet(alpha=1.5)").exact_family);
    CHECK(evt::parse_model("gumbel").exact_family);
    CHECK(evt::parse_model("half_cauchy").alpha == doctest::Approx(1.0));
}

TEST_CASE("parse_model round-trips every catalog name") {
    for (const auto& m : evt::full_catalog()) {
        auto parsed = evt::parse_model(m.name);
        CHECK(parsed.name == m.name);
        CHECK(parsed.domain == m.domain);
    }
}

TEST_CASE("parse_model rejects malformed specs") {
    CHECK_THROWS_AS(evt::parse_model("cauchy"), evt::ParamError);
    CHECK_THROWS_AS(evt::parse_model("pareto(alpha=0)"), evt::ParamError);
    CHECK_THROWS_AS(evt::parse_model("pareto(alpha=-1)"), evt::ParamError);
    CHECK_THROWS_AS(evt::parse_model("frechet(beta=1)"), evt::ParamError);
    CHECK_THROWS_AS(evt::parse_model(""), evt::ParamError);
}

TEST_CASE("domain tags and tail indices are as documented") {
    CHECK(evt::parse_model("pareto(alpha=1)").domain == evt::Domain::Frechet);
    CHECK(evt::parse_model("burr(alpha=2)").domain == evt::Domain::Frechet);
    CHECK(evt::parse_model("half_cauchy").domain == evt::Domain::Frechet);
    CHECK(evt::parse_model("normal").domain == evt::Domain::Gumbel);
    CHECK(evt::parse_model("gumbel").domain == evt::Domain::Gumbel);
    CHECK(evt::parse_model("frechet(alpha=2)").domain == evt::Domain::Frechet);
    CHECK(evt::full_catalog().size() == 7);
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergorisk/probcore.hpp"
#include "ergorisk/quadrature.hpp"
#include "reference_stats.hpp"

using namespace ergorisk;

TEST_SUITE_BEGIN("probcore");

TEST_CASE("standard normal cdf pinned values") {
    CHECK(std_normal_cdf(0.0) == 0.5);
    CHECK(std::fabs(std_normal_cdf(1.0651) - 0.856576) < 1e-5);
    // deep tail saturates without error
    CHECK(std_normal_cdf(-40.0) >= 0.0);
    CHECK(std_normal_cdf(-40.0) < 1e-300);
    CHECK(std_normal_cdf(40.0) == 1.0);
}

TEST_CASE("standard normal cdf against the series/continued-fraction reference") {
    for (int i = 0; i <= 160; ++i) {
        const double u = -8.0 + i * 0.1;
        const double got = std_normal_cdf(u);
        const double want = static_cast<double>(refstats::phi_ref(u));
        CHECK(std::fabs(got - want) <= 1e-12 * want + 1e-18);
    }
}

TEST_CASE("cdf symmetry and monotonicity") {
    double prev = -1.0;
    for (int i = 0; i <= 320; ++i) {
        const double u = -8.0 + i * 0.05;
        const double p = std_normal_cdf(u);
        CHECK(std::fabs(p + std_normal_cdf(-u) - 1.0) <= 1e-14);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("standard normal pdf") {
    CHECK(std_normal_pdf(0.0) == doctest::Approx(0.3989422804).epsilon(1e-9));
    CHECK(std_normal_pdf(1.0) == doctest::Approx(0.2419707245).epsilon(1e-9));
    for (double u : {0.3, 1.7, 2.9, 5.5}) {
        CHECK(std_normal_pdf(u) == std_normal_pdf(-u));
    }
    // integrates to 1 over [-10, 10]
    const RefinedIntegral total =
        detail::simpson_refined_eval([](double u) { return std_normal_pdf(u); }, -10.0, 10.0, 2001);
    CHECK(std::fabs(total.value - 1.0) <= 1e-10);
}

TEST_CASE("normal quantile inverts the cdf") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
    for (double p : {1e-10, 1e-4, 0.01, 0.2, 0.5, 0.9, 0.99, 1.0 - 1e-9}) {
        CHECK(std_normal_cdf(std_normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(-0.2), std::domain_error);
}

TEST_CASE("lognormal spec validation") {
    CHECK_THROWS_AS(LognormalSpec(0.0, 0.2), std::domain_error);
    CHECK_THROWS_AS(LognormalSpec(-1.0, 0.2), std::domain_error);
    CHECK_THROWS_AS(LognormalSpec(1.0, -0.1), std::domain_error);
    const LognormalSpec s(2.5, 0.0);
    CHECK(s.log_mean() == doctest::Approx(std::log(2.5)));
}

TEST_CASE("lognormal cdf") {
    CHECK(lognormal_cdf(LognormalSpec(2.0, 0.4), 2.0) == 0.5);
    CHECK(std::fabs(lognormal_cdf(LognormalSpec(1.7, 0.58), 0.805) - 0.0987) < 1e-3);

    const LognormalSpec step(1.5, 0.0);
    CHECK(lognormal_cdf(step, 1.4999) == 0.0);
    CHECK(lognormal_cdf(step, 1.5) == 1.0);
    CHECK(lognormal_cdf(step, 2.0) == 1.0);

    CHECK_THROWS_AS(lognormal_cdf(step, 0.0), std::domain_error);
    CHECK_THROWS_AS(lognormal_cdf(step, -1.0), std::domain_error);
}

TEST_CASE("lognormal pdf, quantile and their consistency") {
    const LognormalSpec spec(1.3, 0.45);

    CHECK(lognormal_quantile(spec, 0.5) == doctest::Approx(1.3).epsilon(1e-14));
    for (double p : {0.01, 0.5, 0.99}) {
        CHECK(lognormal_cdf(spec, lognormal_quantile(spec, p)) == doctest::Approx(p).epsilon(1e-12));
    }
    // quantile/cdf roundtrip in log space
    for (double x : {0.3, 0.9, 1.3, 2.2, 5.0}) {
        const double back = lognormal_quantile(spec, lognormal_cdf(spec, x));
        CHECK(std::fabs(std::log(back) - std::log(x)) < 1e-10);
    }
    CHECK_THROWS_AS(lognormal_quantile(spec, 0.0), std::domain_error);
    CHECK_THROWS_AS(lognormal_quantile(spec, 1.0), std::domain_error);
    CHECK_THROWS_AS(lognormal_pdf(spec, 0.0), std::domain_error);
    CHECK_THROWS_AS(lognormal_pdf(LognormalSpec(1.0, 0.0), 1.0), std::domain_error);
    CHECK(lognormal_quantile(LognormalSpec(2.0, 0.0), 0.1) == 2.0);

    // pdf is the derivative of the cdf at 10 log-spaced points over
    // median*exp(+-3 sigma)
    for (int i = 0; i < 10; ++i) {
        const double t = -3.0 + 6.0 * i / 9.0;
        const double x = spec.median * std::exp(spec.dispersion * t);
        const double h = 1e-6 * x;
        const double numeric = (lognormal_cdf(spec, x + h) - lognormal_cdf(spec, x - h)) / (2 * h);
        CHECK(numeric == doctest::Approx(lognormal_pdf(spec, x)).epsilon(1e-6));
    }

    // pdf integrates to 1 up to the 1 - 1e-12 quantile (in log space)
    const double hi = std::log(lognormal_quantile(spec, 1.0 - 1e-12));
    const double lo = spec.log_mean() - 9.0 * spec.dispersion;
    const RefinedIntegral mass = detail::simpson_refined_eval(
        [&](double t) {
            const double x = std::exp(t);
            return lognormal_pdf(spec, x) * x;
        },
        lo, hi, 4001);
    CHECK(std::fabs(mass.value - 1.0) <= 1e-8);
}

TEST_SUITE_END();

#include "ergorisk/riskengine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ergorisk/parallel.hpp"

namespace ergorisk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LogRange {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

// Capacity-centered integration window in ln(im), clipped to the hazard
// domain. Capacity mass outside the hazard domain is not counted.
LogRange im_window(const LognormalSpec& capacity, const HazardModel& hazard,
                   const QuadratureSettings& q) {
    const LogDomain dom = integration_domain(hazard);
    LogRange r;
    r.lo = std::max(capacity.log_mean() - q.u_span * capacity.dispersion, dom.lo);
    r.hi = std::min(capacity.log_mean() + q.u_span * capacity.dispersion, dom.hi);
    r.empty = !(r.lo < r.hi);
    return r;
}

bool median_in_domain(const LognormalSpec& capacity, const HazardModel& hazard) {
    const LogDomain dom = integration_domain(hazard);
    const double t = capacity.log_mean();
    return t >= dom.lo && t <= dom.hi;
}

}  // namespace

double annual_rate(const LognormalSpec& capacity, const HazardModel& hazard,
                   const QuadratureSettings& q) {
    q.validate();
    if (capacity.dispersion == 0.0) {
        return median_in_domain(capacity, hazard) ? exceedance(hazard, capacity.median) : 0.0;
    }
    const LogRange r = im_window(capacity, hazard, q);
    if (r.empty) return 0.0;
    const double mu = capacity.log_mean();
    const double sigma = capacity.dispersion;
    auto integrand = [&](double t) {
        return std_normal_pdf((t - mu) / sigma) / sigma * exceedance(hazard, std::exp(t));
    };
    const RefinedIntegral ri = detail::simpson_refined_eval(integrand, r.lo, r.hi, q.n_inner);
    detail::require_converged(ri, q.rel_tol, "annual_rate");
    return ri.value;
}

double annual_rate_cdf_form(const LognormalSpec& capacity, const HazardModel& hazard,
                            const QuadratureSettings& q) {
    q.validate();
    if (capacity.dispersion == 0.0) {
        return median_in_domain(capacity, hazard) ? exceedance(hazard, capacity.median) : 0.0;
    }
    LogRange r = im_window(capacity, hazard, q);
    if (r.empty) return 0.0;
    // For a pulse curve the hazard density has its own compact support;
    // widen the window so the F*h mass is covered too.
    if (const auto* pulse = std::get_if<PulseLognormal>(&hazard)) {
        if (pulse->intensity.dispersion > 0.0) {
            const double s_lo = pulse->intensity.log_mean() - q.u_span * pulse->intensity.dispersion;
            const double s_hi = pulse->intensity.log_mean() + q.u_span * pulse->intensity.dispersion;
            r.lo = std::min(r.lo, s_lo);
            r.hi = std::max(r.hi, s_hi);
        }
    }
    auto integrand = [&](double t) {
        const double im = std::exp(t);
        return lognormal_cdf(capacity, im) * density(hazard, im) * im;
    };
    const RefinedIntegral ri = detail::simpson_refined_eval(integrand, r.lo, r.hi, q.n_inner);
    detail::require_converged(ri, q.rel_tol, "annual_rate_cdf_form");
    // Boundary terms of the integration by parts: the capacity tails carry
    // F(b)H(b) - F(a)H(a) that the density integral misses.
    const double a = std::exp(r.lo);
    const double b = std::exp(r.hi);
    return ri.value + lognormal_cdf(capacity, b) * exceedance(hazard, b) -
           lognormal_cdf(capacity, a) * exceedance(hazard, a);
}

double conditional_rate(const LognormalSpec& x, double y_value, const HazardModel& hazard,
                        const QuadratureSettings& q) {
    return annual_rate(conditional_capacity(x, y_value), hazard, q);
}

double lifetime_from_rate(double rate, double t_d) {
    if (!(rate >= 0.0)) throw std::domain_error("lifetime_from_rate: rate must be >= 0");
    if (!(t_d >= 0.0)) throw std::domain_error("lifetime_from_rate: t_d must be >= 0");
    return -std::expm1(-rate * t_d);
}

double back_calc_rate(double pf, double t_d) {
    if (!(pf >= 0.0 && pf < 1.0)) {
        throw std::domain_error("back_calc_rate: pf must lie in [0,1), got " + std::to_string(pf));
    }
    if (!(t_d > 0.0)) throw std::domain_error("back_calc_rate: t_d must be positive");
    return -std::log1p(-pf) / t_d;
}

double err_pct_pf(double pf_ensemble, double pf_exact) {
    if (pf_exact == 0.0) throw std::domain_error("err_pct_pf: exact probability is zero");
    return 100.0 * (pf_ensemble - pf_exact) / pf_exact;
}

double err_pct_lambda(double lambda_ensemble, double lambda_exact) {
    if (lambda_exact == 0.0) throw std::domain_error("err_pct_lambda: exact rate is zero");
    return 100.0 * (lambda_ensemble - lambda_exact) / lambda_exact;
}

double error_parameter(const LognormalSpec& x, const LognormalSpec& y, double margin) {
    if (!(x.dispersion > 0.0)) {
        throw std::domain_error("error_parameter: x dispersion must be positive");
    }
    if (!(margin > 0.0) || !std::isfinite(margin)) {
        throw std::domain_error("error_parameter: margin must be positive");
    }
    const double ratio = y.dispersion / x.dispersion;
    return (ratio * ratio + 1.0) / (margin / x.dispersion);
}

namespace detail {

OuterRateGrid conditional_rate_grid(const LognormalSpec& x, const LognormalSpec& y,
                                    const HazardModel& hazard, const QuadratureSettings& q) {
    q.validate();
    OuterRateGrid grid;
    grid.u_span = q.u_span;
    grid.u = simpson_fine_nodes(-q.u_span, q.u_span, q.n_outer);
    grid.rate.resize(grid.u.size());
    parallel_for(static_cast<std::int64_t>(grid.u.size()), [&](std::int64_t i) {
        const double yv = y.median * std::exp(y.dispersion * grid.u[static_cast<std::size_t>(i)]);
        grid.rate[static_cast<std::size_t>(i)] = conditional_rate(x, yv, hazard, q);
    });
    return grid;
}

RefinedIntegral expect_over_y(const OuterRateGrid& grid,
                              const std::function<double(double)>& g) {
    std::vector<double> values(grid.u.size());
    for (std::size_t i = 0; i < grid.u.size(); ++i) {
        values[i] = std_normal_pdf(grid.u[i]) * g(grid.rate[i]);
    }
    return simpson_refined(values, -grid.u_span, grid.u_span);
}

}  // namespace detail

double lifetime_exact(const LognormalSpec& x, const LognormalSpec& y, const HazardModel& hazard,
                      double t_d, const QuadratureSettings& q) {
    if (!(t_d >= 0.0)) throw std::domain_error("lifetime_exact: t_d must be >= 0");
    if (y.dispersion == 0.0) {
        return lifetime_from_rate(conditional_rate(x, y.median, hazard, q), t_d);
    }
    const detail::OuterRateGrid grid = detail::conditional_rate_grid(x, y, hazard, q);
    const RefinedIntegral r = detail::expect_over_y(
        grid, [t_d](double rate) { return -std::expm1(-rate * t_d); });
    detail::require_converged(r, q.rel_tol, "lifetime_exact");
    return r.value;
}

double pf_variance_product(const LognormalSpec& x, const LognormalSpec& y,
                           const HazardModel& hazard, double t_d, const QuadratureSettings& q) {
    if (!(t_d >= 0.0)) throw std::domain_error("pf_variance_product: t_d must be >= 0");
    if (y.dispersion == 0.0) return 0.0;
    const detail::OuterRateGrid grid = detail::conditional_rate_grid(x, y, hazard, q);
    const RefinedIntegral m1 = detail::expect_over_y(
        grid, [t_d](double rate) { return -std::expm1(-rate * t_d); });
    const RefinedIntegral m2 = detail::expect_over_y(grid, [t_d](double rate) {
        const double pf = -std::expm1(-rate * t_d);
        return pf * pf;
    });
    detail::require_converged(m1, q.rel_tol, "pf_variance_product");
    return t_d * (m2.value - m1.value * m1.value);
}

RiskReport assess(const LognormalSpec& x, const LognormalSpec& y, const HazardModel& hazard,
                  double margin, double t_d, const QuadratureSettings& q) {
    if (!(t_d > 0.0)) throw std::domain_error("assess: t_d must be positive");
    q.validate();

    RiskReport rep;
    rep.t_d = t_d;
    rep.lambda_rtr = annual_rate(x, hazard, q);
    rep.lambda_ensemble = annual_rate(compose(x, y), hazard, q);
    rep.pf_ensemble = lifetime_from_rate(rep.lambda_ensemble, t_d);

    double m2;
    if (y.dispersion == 0.0) {
        // Degenerate system factor: the exact pipeline is the ensemble one.
        rep.pf_exact = lifetime_from_rate(conditional_rate(x, y.median, hazard, q), t_d);
        m2 = rep.pf_exact * rep.pf_exact;
        rep.lambda_exact = back_calc_rate(
            lifetime_from_rate(conditional_rate(x, y.median, hazard, q), 1.0), 1.0);
    } else {
        const detail::OuterRateGrid grid = detail::conditional_rate_grid(x, y, hazard, q);
        const RefinedIntegral pf_t = detail::expect_over_y(
            grid, [t_d](double rate) { return -std::expm1(-rate * t_d); });
        detail::require_converged(pf_t, q.rel_tol, "assess: lifetime_exact");
        const RefinedIntegral pf_sq = detail::expect_over_y(grid, [t_d](double rate) {
            const double pf = -std::expm1(-rate * t_d);
            return pf * pf;
        });
        const RefinedIntegral pf_1y = detail::expect_over_y(
            grid, [](double rate) { return -std::expm1(-rate); });
        detail::require_converged(pf_1y, q.rel_tol, "assess: one-year probability");
        rep.pf_exact = pf_t.value;
        m2 = pf_sq.value;
        rep.lambda_exact = back_calc_rate(pf_1y.value, 1.0);
    }

    rep.err_pct_pf = (rep.pf_exact == 0.0 && rep.pf_ensemble == 0.0)
                         ? 0.0
                         : err_pct_pf(rep.pf_ensemble, rep.pf_exact);
    rep.err_pct_lambda = (rep.lambda_exact == 0.0 && rep.lambda_ensemble == 0.0)
                             ? 0.0
                             : err_pct_lambda(rep.lambda_ensemble, rep.lambda_exact);
    rep.var_product = t_d * (m2 - rep.pf_exact * rep.pf_exact);
    rep.error_parameter = (std::isfinite(margin) && margin > 0.0 && x.dispersion > 0.0)
                              ? error_parameter(x, y, margin)
                              : kNaN;
    return rep;
}

}  // namespace ergorisk

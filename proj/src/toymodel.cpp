#include "ergorisk/toymodel.hpp"

#include <cmath>
#include <stdexcept>

namespace ergorisk {

namespace {

double rate_from_exceedance(double eta, double p, RateConvention convention) {
    return (convention == RateConvention::upcrossing) ? eta * p * (1.0 - p) : eta * p;
}

double exceedance_probability(double log_margin, double total_dispersion) {
    if (!(total_dispersion > 0.0)) {
        throw std::domain_error("toy rate: at least one dispersion must be positive");
    }
    return std_normal_cdf(-log_margin / total_dispersion);
}

}  // namespace

double limit_state(double s, double x, double y) { return x * y / s - 1.0; }

double toy_ensemble_rate(const ToyProblem& p, RateConvention convention) {
    const double log_margin = p.x.log_mean() + p.y.log_mean() - p.s.log_mean();
    const double total = std::sqrt(p.x.dispersion * p.x.dispersion +
                                   p.y.dispersion * p.y.dispersion +
                                   p.s.dispersion * p.s.dispersion);
    return rate_from_exceedance(p.eta, exceedance_probability(log_margin, total), convention);
}

double toy_conditional_rate(const ToyProblem& p, double y_value, RateConvention convention) {
    if (!(y_value > 0.0)) {
        throw std::domain_error("toy_conditional_rate: y must be positive");
    }
    const double log_margin = p.x.log_mean() + std::log(y_value) - p.s.log_mean();
    const double total =
        std::sqrt(p.x.dispersion * p.x.dispersion + p.s.dispersion * p.s.dispersion);
    return rate_from_exceedance(p.eta, exceedance_probability(log_margin, total), convention);
}

double toy_exact_pf(const ToyProblem& p, double t_d, const QuadratureSettings& q,
                    RateConvention convention) {
    if (!(t_d >= 0.0)) throw std::domain_error("toy_exact_pf: t_d must be >= 0");
    q.validate();
    if (p.y.dispersion == 0.0) {
        return -std::expm1(-toy_conditional_rate(p, p.y.median, convention) * t_d);
    }
    auto integrand = [&](double u) {
        const double yv = p.y.median * std::exp(p.y.dispersion * u);
        const double rate = toy_conditional_rate(p, yv, convention);
        return std_normal_pdf(u) * -std::expm1(-rate * t_d);
    };
    const RefinedIntegral r =
        detail::simpson_refined_eval(integrand, -q.u_span, q.u_span, q.n_outer);
    detail::require_converged(r, q.rel_tol, "toy_exact_pf");
    return r.value;
}

double toy_ensemble_pf(const ToyProblem& p, double t_d, RateConvention convention) {
    if (!(t_d >= 0.0)) throw std::domain_error("toy_ensemble_pf: t_d must be >= 0");
    return -std::expm1(-toy_ensemble_rate(p, convention) * t_d);
}

std::vector<SweepRow> toy_error_sweep(const ToyProblem& p, SweepAxis axis,
                                      const std::vector<double>& grid, double t_d,
                                      const QuadratureSettings& q, RateConvention convention) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const double v : grid) {
        ToyProblem pp = p;
        double t = t_d;
        if (axis == SweepAxis::sigma_ln_y) {
            if (!(v >= 0.0)) throw std::domain_error("toy_error_sweep: sigma grid must be >= 0");
            pp.y = LognormalSpec(p.y.median, v);
        } else {
            if (!(v >= 0.0)) throw std::domain_error("toy_error_sweep: time grid must be >= 0");
            t = v;
        }
        SweepRow row;
        row.axis = v;
        row.pf_exact = toy_exact_pf(pp, t, q, convention);
        row.pf_ensemble = toy_ensemble_pf(pp, t, convention);
        row.err_pct = (row.pf_exact == 0.0 && row.pf_ensemble == 0.0)
                          ? 0.0
                          : 100.0 * (row.pf_ensemble - row.pf_exact) / row.pf_exact;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ergorisk

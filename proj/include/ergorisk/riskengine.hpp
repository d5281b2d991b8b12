#pragma once

#include <functional>
#include <vector>

#include "ergorisk/fragility.hpp"
#include "ergorisk/hazard.hpp"
#include "ergorisk/probcore.hpp"
#include "ergorisk/quadrature.hpp"

namespace ergorisk {

/// Annual rates, lifetime failure probabilities and the diagnostics of the
/// error committed by folding the fixed-per-structure factor into a single
/// "ensemble" rate.
struct RiskReport {
    double lambda_rtr = 0.0;       // rate with the renewed factor only, 1/year
    double lambda_ensemble = 0.0;  // rate with the composed capacity, 1/year
    double lambda_exact = 0.0;     // back-calculated from the 1-year exact pf
    double pf_exact = 0.0;         // expectation over y outside the time integral
    double pf_ensemble = 0.0;      // ensemble rate pushed through the Poisson formula
    double err_pct_pf = 0.0;
    double err_pct_lambda = 0.0;
    double error_parameter = 0.0;  // NaN when margin or x dispersion unavailable
    double var_product = 0.0;      // t_d * Var[pf]
    double t_d = 0.0;              // years
};

/// Annual failure rate: integral of the capacity density against H, taken
/// in ln(im) over the capacity median +- u_span log-dispersions intersected
/// with the hazard domain. A deterministic capacity sifts to H(median)
/// (0 if the median lies outside the hazard domain).
double annual_rate(const LognormalSpec& capacity, const HazardModel& hazard,
                   const QuadratureSettings& q = {});

/// Same rate through the complementary route: integral of the capacity CDF
/// against the hazard density plus the boundary terms of the integration by
/// parts. Used to cross-check annual_rate; the two agree to quadrature
/// accuracy.
double annual_rate_cdf_form(const LognormalSpec& capacity, const HazardModel& hazard,
                            const QuadratureSettings& q = {});

/// Rate conditional on a realized system factor.
double conditional_rate(const LognormalSpec& x, double y_value, const HazardModel& hazard,
                        const QuadratureSettings& q = {});

/// Lifetime failure probability with the expectation over the fixed factor
/// taken outside the time integral:
///   integral over y of [1 - exp(-lambda(y) t_d)] f_Y(y) dy.
double lifetime_exact(const LognormalSpec& x, const LognormalSpec& y, const HazardModel& hazard,
                      double t_d, const QuadratureSettings& q = {});

/// Poisson first-passage probability for a constant rate.
double lifetime_from_rate(double rate, double t_d);

/// Inverse of lifetime_from_rate.
double back_calc_rate(double pf, double t_d);

double err_pct_pf(double pf_ensemble, double pf_exact);
double err_pct_lambda(double lambda_ensemble, double lambda_exact);

/// Ensemble-error indicator ((sy/sx)^2 + 1) / (margin/sx); comparable only
/// across cases sharing a hazard curve.
double error_parameter(const LognormalSpec& x, const LognormalSpec& y, double margin);

/// t_d * Var[pf] where the variance is over the fixed factor.
double pf_variance_product(const LognormalSpec& x, const LognormalSpec& y,
                           const HazardModel& hazard, double t_d,
                           const QuadratureSettings& q = {});

/// Runs the full pipeline for one structure/hazard pair. margin may be NaN;
/// error_parameter is then NaN.
RiskReport assess(const LognormalSpec& x, const LognormalSpec& y, const HazardModel& hazard,
                  double margin, double t_d, const QuadratureSettings& q = {});

namespace detail {

/// Conditional rates on the refined outer grid u_i (y = y_med * exp(sy*u)).
/// Rates are computed in parallel but stored by index, so results do not
/// depend on the worker count.
struct OuterRateGrid {
    double u_span = 0.0;
    std::vector<double> u;
    std::vector<double> rate;
};

OuterRateGrid conditional_rate_grid(const LognormalSpec& x, const LognormalSpec& y,
                                    const HazardModel& hazard, const QuadratureSettings& q);

/// E_Y[g(rate)] over the grid with the standard-normal weight; residual is
/// the coarse/fine Simpson drift.
RefinedIntegral expect_over_y(const OuterRateGrid& grid,
                              const std::function<double(double)>& g);

}  // namespace detail
}  // namespace ergorisk

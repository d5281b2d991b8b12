#pragma once

#include <vector>

#include "ergorisk/probcore.hpp"
#include "ergorisk/quadrature.hpp"

namespace ergorisk {

/// Closed-form pulse-load problem: pulses arrive at rate eta with lognormal
/// intensity s; capacity is the product of a factor x renewed at every
/// pulse and a factor y fixed per structure.
struct ToyProblem {
    double eta = 1e-2;
    LognormalSpec s{1.0, 1.0};
    LognormalSpec x{4.0, 0.4};
    LognormalSpec y{0.85, 0.4};
};

/// How a per-pulse exceedance probability p maps to a failure rate.
enum class RateConvention {
    /// eta * p * (1 - p): rate of below-to-above transitions of the iid
    /// pulse sequence. The published closed forms use this.
    upcrossing,
    /// eta * p: every exceeding pulse counts. This is the exact
    /// first-passage rate of the pulse process (the MC oracle confirms it).
    first_passage,
};

/// Safety margin g = x*y/s - 1; failure iff g <= 0.
double limit_state(double s, double x, double y);

/// Rate with the fixed factor folded into the capacity.
double toy_ensemble_rate(const ToyProblem& p,
                         RateConvention convention = RateConvention::upcrossing);

/// Rate conditional on a realized fixed factor.
double toy_conditional_rate(const ToyProblem& p, double y_value,
                            RateConvention convention = RateConvention::upcrossing);

/// Lifetime probability with the expectation over y outside the time
/// integral (quadrature over the conditional closed form).
double toy_exact_pf(const ToyProblem& p, double t_d, const QuadratureSettings& q = {},
                    RateConvention convention = RateConvention::upcrossing);

/// Lifetime probability from the ensemble rate.
double toy_ensemble_pf(const ToyProblem& p, double t_d,
                       RateConvention convention = RateConvention::upcrossing);

enum class SweepAxis { sigma_ln_y, t_d };

struct SweepRow {
    double axis = 0.0;
    double pf_exact = 0.0;
    double pf_ensemble = 0.0;
    double err_pct = 0.0;
};

/// Error sweep along one axis. For sigma_ln_y the lifetime is t_d and the
/// grid replaces y.dispersion; for t_d the grid is the lifetime in years.
std::vector<SweepRow> toy_error_sweep(const ToyProblem& p, SweepAxis axis,
                                      const std::vector<double>& grid, double t_d,
                                      const QuadratureSettings& q = {},
                                      RateConvention convention = RateConvention::upcrossing);

}  // namespace ergorisk

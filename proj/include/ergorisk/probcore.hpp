#pragma once

#include <cmath>

namespace ergorisk {

/// A lognormal quantity given by its median and the standard deviation of
/// its natural logarithm. Dispersion 0 is legal and means the quantity is
/// deterministic (step CDF at the median).
struct LognormalSpec {
    double median = 1.0;
    double dispersion = 0.0;

    LognormalSpec() = default;
    LognormalSpec(double median, double dispersion);

    double log_mean() const { return std::log(median); }
};

/// Standard normal CDF, accurate to a few ulp over the full double range.
double std_normal_cdf(double u);

/// Standard normal density.
double std_normal_pdf(double u);

/// Inverse standard normal CDF (Wichura's PPND16). p must lie in (0, 1).
double std_normal_quantile(double p);

/// CDF of a lognormal at x > 0. Dispersion 0 degenerates to a unit step at
/// the median.
double lognormal_cdf(const LognormalSpec& spec, double x);

/// Density of a lognormal at x > 0. Requires dispersion > 0.
double lognormal_pdf(const LognormalSpec& spec, double x);

/// Quantile at p in (0, 1). Dispersion 0 returns the median for every p.
double lognormal_quantile(const LognormalSpec& spec, double p);

}  // namespace ergorisk

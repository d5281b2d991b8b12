#include "ergorisk/fragility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ergorisk/quadrature.hpp"

namespace ergorisk {

namespace {
constexpr double kDispersionDeficitTol = 1e-9;  // squared-dispersion round-off allowance
}

LognormalSpec compose(const LognormalSpec& x, const LognormalSpec& y) {
    return LognormalSpec(x.median * y.median, std::hypot(x.dispersion, y.dispersion));
}

LognormalSpec decompose(const LognormalSpec& z, const LognormalSpec& x) {
    const double var_diff = z.dispersion * z.dispersion - x.dispersion * x.dispersion;
    double dispersion;
    if (var_diff >= 0.0) {
        dispersion = std::sqrt(var_diff);
    } else if (-var_diff <= kDispersionDeficitTol) {
        dispersion = 0.0;
    } else {
        throw std::domain_error(
            "decompose: total dispersion " + std::to_string(z.dispersion) +
            " is smaller than the record-to-record dispersion " + std::to_string(x.dispersion) +
            "; the input fragilities are inconsistent");
    }
    return LognormalSpec(z.median / x.median, dispersion);
}

LognormalSpec conditional_capacity(const LognormalSpec& x, double y_value) {
    if (!(y_value > 0.0) || !std::isfinite(y_value)) {
        throw std::domain_error("conditional_capacity: y must be positive, got " +
                                std::to_string(y_value));
    }
    return LognormalSpec(x.median * y_value, x.dispersion);
}

double product_density_numeric(const LognormalSpec& x, const LognormalSpec& y, double z_value) {
    if (!(z_value > 0.0)) {
        throw std::domain_error("product_density_numeric: z must be positive, got " +
                                std::to_string(z_value));
    }
    if (x.dispersion == 0.0 && y.dispersion == 0.0) {
        throw std::domain_error("product_density_numeric: both factors are deterministic");
    }
    // A deterministic factor sifts the integral.
    if (y.dispersion == 0.0) return lognormal_pdf(x, z_value / y.median) / y.median;
    if (x.dispersion == 0.0) return lognormal_pdf(y, z_value / x.median) / x.median;

    // Integrate (1/y') f_X(z/y') f_Y(y') dy' with y' = exp(t).
    const double span = 9.0 * y.dispersion;
    const double mu = y.log_mean();
    auto integrand = [&](double t) {
        const double yv = std::exp(t);
        return lognormal_pdf(x, z_value / yv) * lognormal_pdf(y, yv);
    };
    const RefinedIntegral r =
        detail::simpson_refined_eval(integrand, mu - span, mu + span, 2001);
    detail::require_converged(r, 1e-8, "product_density_numeric");
    return r.value;
}

}  // namespace ergorisk

#pragma once

#include "ergorisk/probcore.hpp"

namespace ergorisk {

/// Lognormal fragility curve over intensity measure: the probability that
/// the limit state is reached given IM = im.
struct FragilityCurve {
    LognormalSpec capacity;  // intensity-measure capacity, units g

    double evaluate(double im) const { return lognormal_cdf(capacity, im); }
};

/// Product of two lognormal factors: median multiplies, log-variances add.
LognormalSpec compose(const LognormalSpec& x, const LognormalSpec& y);

/// Inverse of compose: recovers the second factor from the total and the
/// first. Requires z.dispersion >= x.dispersion; a deficit of at most 1e-9
/// in squared dispersion (table round-off) is clamped to 0.
LognormalSpec decompose(const LognormalSpec& z, const LognormalSpec& x);

/// Capacity conditional on a realized system factor y: the median scales,
/// the record-to-record dispersion stays.
LognormalSpec conditional_capacity(const LognormalSpec& x, double y_value);

/// Density of the product X*Y at z, by direct quadrature of the product
/// integral. Exists to verify the lognormal-closure shortcut used by
/// compose(); agrees with lognormal_pdf(compose(x, y), z) to ~1e-8.
double product_density_numeric(const LognormalSpec& x, const LognormalSpec& y, double z_value);

/// Capacity split into the factor renewed at every event (x) and the factor
/// fixed over a structure's life (y).
struct Decomposition {
    LognormalSpec x;
    LognormalSpec y;

    LognormalSpec composed() const { return compose(x, y); }
};

}  // namespace ergorisk

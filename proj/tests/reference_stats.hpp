#pragma once

// Test-only reference implementations, independent of the library's
// probcore path. Phi is built from a Taylor series of erf (small
// arguments) and the erfc continued fraction (large arguments) in long
// double, which holds the reference error comfortably below 1e-16
// relative over |u| <= 8.

#include <cmath>

namespace refstats {

inline long double erf_series(long double x) {
    // erf(x) = 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))
    const long double x2 = x * x;
    long double term = x;  // n = 0
    long double sum = x;
    for (int n = 1; n < 400; ++n) {
        term *= -x2 / n;
        const long double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::fabs(contrib) < 1e-25L * std::fabs(sum)) break;
    }
    return sum * 1.1283791670955125738961589031215452L;  // 2/sqrt(pi)
}

inline long double erfc_continued_fraction(long double x) {
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    long double f = x;
    for (int n = 240; n >= 1; --n) {
        f = x + (n / 2.0L) / f;
    }
    return std::exp(-x * x) / 1.7724538509055160272981674833411452L / f;
}

inline long double erfc_ref(long double x) {
    if (x < 0) return 2.0L - erfc_ref(-x);
    if (x < 2.5L) return 1.0L - erf_series(x);
    return erfc_continued_fraction(x);
}

inline long double phi_ref(long double u) {
    const long double inv_sqrt2 = 0.70710678118654752440084436210484904L;
    if (u >= 0) return 1.0L - 0.5L * erfc_ref(u * inv_sqrt2);
    return 0.5L * erfc_ref(-u * inv_sqrt2);
}

}  // namespace refstats

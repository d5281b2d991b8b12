#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergorisk/hazard.hpp"
#include "ergorisk/riskengine.hpp"

namespace ergorisk {

namespace {

// ln of the rate a constraint induces under PowerLaw(k0=1, k, im_min).
// Rates scale linearly with k0 for every constraint type, which is what
// lets ln k0 be eliminated from the 2-D system.
double log_unit_rate(const CalibrationConstraint& c, double k, double im_min,
                     const QuadratureSettings& q) {
    return std::visit(
        [&](const auto& cc) -> double {
            using T = std::decay_t<decltype(cc)>;
            const PowerLaw unit(1.0, k, im_min);
            if constexpr (std::is_same_v<T, PointConstraint>) {
                return std::log(exceedance(HazardModel(unit), cc.im));
            } else {
                const double r = annual_rate(cc.capacity, HazardModel(unit), q);
                if (!(r > 0.0)) {
                    throw CalibrationError(
                        "calibrate_power_law: a rate constraint induces a zero rate "
                        "(capacity mass entirely outside the hazard domain)");
                }
                return std::log(r);
            }
        },
        c);
}

double target_rate(const CalibrationConstraint& c) {
    return std::visit([](const auto& cc) { return cc.rate; }, c);
}

}  // namespace

PowerLaw calibrate_power_law(const std::vector<CalibrationConstraint>& constraints,
                             const QuadratureSettings& q, const CalibrationOptions& options) {
    if (constraints.size() != 2) {
        throw CalibrationError("calibrate_power_law: exactly two constraints required, got " +
                               std::to_string(constraints.size()));
    }
    q.validate();
    for (const auto& c : constraints) {
        if (!(target_rate(c) > 0.0)) {
            throw CalibrationError("calibrate_power_law: target rates must be positive");
        }
    }
    const double lt0 = std::log(target_rate(constraints[0]));
    const double lt1 = std::log(target_rate(constraints[1]));

    double im_min = 1e-8;  // provisional floor; fixed up after the first pass
    double k = 0.0;
    double log_k0 = 0.0;
    int iterations = 0;

    for (int pass = 0; pass < 2; ++pass) {
        // residual difference between the two constraints once ln k0 is
        // eliminated; a root in k solves both simultaneously
        auto phi = [&](double kk) {
            return (lt0 - log_unit_rate(constraints[0], kk, im_min, q)) -
                   (lt1 - log_unit_rate(constraints[1], kk, im_min, q));
        };

        const int scan = std::max(options.scan_points, 3);
        double best_abs = std::numeric_limits<double>::infinity();
        double lo = 0.0, hi = 0.0;
        bool bracketed = false;
        double prev_k = options.k_lo;
        double prev_phi = phi(prev_k);
        best_abs = std::fabs(prev_phi);
        for (int i = 1; i < scan; ++i) {
            const double kk =
                options.k_lo + (options.k_hi - options.k_lo) * i / (scan - 1);
            const double ph = phi(kk);
            best_abs = std::min(best_abs, std::fabs(ph));
            if (prev_phi == 0.0 || prev_phi * ph < 0.0) {
                lo = prev_k;
                hi = kk;
                bracketed = true;
                break;
            }
            prev_k = kk;
            prev_phi = ph;
        }
        if (!bracketed) {
            throw CalibrationError(
                "calibrate_power_law: no sign change in the slope band [" +
                    std::to_string(options.k_lo) + ", " + std::to_string(options.k_hi) +
                    "]; constraints may be dependent or inconsistent",
                best_abs);
        }

        double f_lo = phi(lo);
        while (hi - lo > 1e-13 * std::max(1.0, hi)) {
            if (++iterations > options.max_iterations) {
                throw CalibrationError("calibrate_power_law: bisection exceeded " +
                                           std::to_string(options.max_iterations) +
                                           " iterations",
                                       std::fabs(phi(0.5 * (lo + hi))));
            }
            const double mid = 0.5 * (lo + hi);
            const double f_mid = phi(mid);
            if (f_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if (f_lo * f_mid < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        k = 0.5 * (lo + hi);
        log_k0 = lt0 - log_unit_rate(constraints[0], k, im_min, q);

        if (pass == 0) {
            // Pin the floor where the fitted curve crosses ~10 events/year,
            // then re-solve with it held fixed so the constraints stay exact.
            im_min = std::exp((log_k0 - std::log(10.0)) / k);
        }
    }

    const PowerLaw fitted(std::exp(log_k0), k, im_min);
    double worst = 0.0;
    for (const auto& c : constraints) {
        const double induced = std::exp(std::log(fitted.k0) + log_unit_rate(c, k, im_min, q));
        worst = std::max(worst, std::fabs(induced / target_rate(c) - 1.0));
    }
    if (!(worst <= options.rel_tol)) {
        throw CalibrationError("calibrate_power_law: fitted curve misses its targets", worst);
    }
    return fitted;
}

}  // namespace ergorisk

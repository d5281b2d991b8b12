#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ergorisk/probcore.hpp"
#include "ergorisk/quadrature.hpp"

namespace ergorisk {

/// Annual exceedance curve of a Poisson pulse process with lognormal pulse
/// intensity: H(im) = eta * (1 - F_S(im)).
struct PulseLognormal {
    double eta = 0.0;              // pulse arrivals per year
    LognormalSpec intensity;       // pulse intensity S

    PulseLognormal() = default;
    PulseLognormal(double eta, LognormalSpec intensity);
};

/// H(im) = k0 * im^-k for im >= im_min; constant below the floor. Risk
/// integrals start at im_min (the curve diverges as im -> 0 without it).
struct PowerLaw {
    double k0 = 1.0;     // rate scale, 1/year
    double k = 1.0;      // log-log slope
    double im_min = 0.0; // domain floor, g

    PowerLaw() = default;
    PowerLaw(double k0, double k, double im_min);

    /// Floor placed where the curve reaches 10 events/year.
    static PowerLaw with_default_floor(double k0, double k);
};

/// Hand-tabulated exceedance curve, interpolated linearly in
/// (ln im, ln H). Queries outside the table throw unless extend_slopes is
/// set, in which case the terminal slopes continue.
struct Tabulated {
    struct Point {
        double im = 0.0;  // g
        double H = 0.0;   // 1/year
    };
    std::vector<Point> points;
    bool extend_slopes = false;
};

/// Validates ordering (strictly increasing im, strictly decreasing H,
/// everything positive); index in error messages is 1-based.
Tabulated make_tabulated(std::vector<Tabulated::Point> points, bool extend_slopes = false);

/// Reads a curve from CSV with header "im,H". Malformed rows are reported
/// with their line number.
Tabulated load_hazard_csv(std::istream& in, bool extend_slopes = false);
Tabulated load_hazard_csv(const std::string& path, bool extend_slopes = false);

using HazardModel = std::variant<PulseLognormal, PowerLaw, Tabulated>;

/// Mean annual rate of events with intensity >= im.
double exceedance(const HazardModel& model, double im);

/// |dH/dim| at im. Analytic for the parametric curves, the segment slope of
/// the log-log interpolant for tables (0 below a power law's floor).
double density(const HazardModel& model, double im);

/// Log-intensity interval over which risk integrals run: the whole axis for
/// pulse curves, [ln im_min, inf) for power laws, the table span for
/// tabulated curves without slope extension.
struct LogDomain {
    double lo;
    double hi;
};
LogDomain integration_domain(const HazardModel& model);

/// One calibration target: either a point on the curve, H(im) = rate, ...
struct PointConstraint {
    double im;
    double rate;
};
/// ... or an induced annual failure rate for a lognormal capacity.
struct RateConstraint {
    LognormalSpec capacity;
    double rate;
};
using CalibrationConstraint = std::variant<PointConstraint, RateConstraint>;

struct CalibrationOptions {
    // Slope band searched for the root. Anchor+rate systems have a second,
    // implausibly steep or flat root; the band selects the physical one.
    double k_lo = 0.5;
    double k_hi = 8.0;
    int scan_points = 61;    // band scan for the first sign change
    int max_iterations = 200;
    double rel_tol = 1e-6;   // residual each constraint must meet
};

/// Fits (k0, k) to two independent constraints. Both constraint types are
/// log-linear in ln k0, so the 2-D system reduces exactly to a scalar root
/// in k, solved by a first-sign-change scan plus bisection. Deterministic;
/// constraint order does not matter.
PowerLaw calibrate_power_law(const std::vector<CalibrationConstraint>& constraints,
                             const QuadratureSettings& q = {},
                             const CalibrationOptions& options = {});

}  // namespace ergorisk

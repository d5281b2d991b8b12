#pragma once

#include <stdexcept>
#include <string>

namespace ergorisk {

/// Quadrature or iteration failed to reach its tolerance. Carries the
/// residual that was actually achieved.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double residual, double tolerance)
        : std::runtime_error(what + " (residual " + std::to_string(residual) +
                             ", tolerance " + std::to_string(tolerance) + ")"),
          residual_(residual),
          tolerance_(tolerance) {}

    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }

private:
    double residual_;
    double tolerance_;
};

/// Hazard-curve calibration could not satisfy its constraints.
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& what,
                              double best_residual = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace ergorisk

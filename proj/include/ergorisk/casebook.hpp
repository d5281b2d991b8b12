#pragma once

#include <optional>
#include <vector>

#include "ergorisk/hazard.hpp"
#include "ergorisk/riskengine.hpp"

namespace ergorisk {

/// Which study a benchmark frame comes from: the FOSM-based set (medians
/// unchanged by system uncertainty) or the response-surface set (median
/// shifts too).
enum class CaseSource { goulet, liel };

/// One benchmark reinforced-concrete moment frame: metadata plus the
/// capacity split into record-to-record (x), total (z) and system-only (y)
/// lognormal factors. margin is the median capacity over the
/// 2%-in-50-years intensity.
struct FrameCase {
    int case_id = 0;
    CaseSource source = CaseSource::goulet;
    int stories = 0;
    double period_t1 = 0.0;  // s
    double margin = 0.0;
    LognormalSpec x;
    LognormalSpec z;
    LognormalSpec y;
};

/// The seven embedded benchmark frames.
const std::vector<FrameCase>& builtin_cases();

enum class CalibrationStrategy {
    /// Fit the power law to the benchmark's published record-to-record and
    /// ensemble annual rates. Default: it pins the tabulated endpoints and
    /// leaves everything else a genuine prediction.
    two_rate,
    /// Pin H at the margin-implied 2%-in-50-years intensity and fit the
    /// slope to the record-to-record rate.
    anchor_slope,
};

/// Annual rate equivalent of 2% exceedance in 50 years (Poisson).
double two_percent_in_50yr_rate();

/// Fits a per-case power-law stand-in for the unpublished hazard curve.
HazardModel calibrate_case(const FrameCase& frame, CalibrationStrategy strategy,
                           const QuadratureSettings& q = {});

/// One shared curve for cases with a common site (groups {1,2,3} and
/// {5,6,7}): least squares on log-rates for two_rate; for anchor_slope the
/// margin-implied anchors must agree within 2%.
HazardModel calibrate_group(const std::vector<FrameCase>& frames, CalibrationStrategy strategy,
                            const QuadratureSettings& q = {});

/// Published benchmark row for comparison. For t_d = 1 the a/b/c columns
/// are annual rates (1/year); for t_d = 50 or 100 they are lifetime failure
/// probabilities. NaN marks columns the benchmark does not tabulate.
struct TargetRow {
    double a = 0.0;          // record-to-record only
    double b = 0.0;          // exact
    double c = 0.0;          // ensemble
    double ratio_b_a = 0.0;
    double err_pct = 0.0;
    double error_parameter = 0.0;
    double var_product = 0.0;
};

std::optional<TargetRow> reference_targets(int case_id, double t_d);

struct CaseResult {
    int case_id = 0;
    double t_d = 0.0;
    CalibrationStrategy strategy = CalibrationStrategy::two_rate;
    HazardModel hazard_used;
    RiskReport report;
    double pf_rtr = 0.0;  // lifetime probability from lambda_rtr alone
    std::optional<TargetRow> targets;
};

/// Calibrates the case's hazard once and assesses it at every lifetime.
std::vector<CaseResult> reproduce(const FrameCase& frame, const std::vector<double>& t_ds,
                                  CalibrationStrategy strategy = CalibrationStrategy::two_rate,
                                  const QuadratureSettings& q = {});

/// Fragility curves on an intensity grid: record-to-record only, the total
/// as tabulated, and the total rebuilt from the x*y product. The last two
/// differ only by table round-off (< 0.01 in probability).
struct FragilityProfileRow {
    double im = 0.0;
    double f_x = 0.0;
    double f_z_reported = 0.0;
    double f_z_composed = 0.0;
};

std::vector<FragilityProfileRow> fragility_profiles(const FrameCase& frame,
                                                    const std::vector<double>& im_grid);

}  // namespace ergorisk

#include <doctest.h>

#include <cmath>
#include <vector>

#include "ergorisk/casebook.hpp"

using namespace ergorisk;

TEST_SUITE_BEGIN("casebook");

TEST_CASE("builtin cases carry the benchmark rows verbatim") {
    const auto& cases = builtin_cases();
    REQUIRE(cases.size() == 7);

    CHECK(cases[0].case_id == 1);
    CHECK(cases[0].margin == 2.11);
    CHECK(cases[0].period_t1 == 1.00);
    CHECK(cases[0].x.median == 1.7);
    CHECK(cases[0].x.dispersion == 0.30);
    CHECK(cases[0].z.dispersion == 0.58);
    CHECK(cases[0].y.median == 1.0);
    CHECK(cases[0].y.dispersion == 0.5);

    CHECK(cases[1].z.median == 2.1);
    CHECK(cases[1].z.dispersion == 0.578);
    CHECK(cases[1].y.dispersion == 0.5);

    CHECK(cases[3].source == CaseSource::liel);
    CHECK(cases[3].x.median == 1.3);
    CHECK(cases[3].x.dispersion == 0.40);
    CHECK(cases[3].z.median == 1.10);
    CHECK(cases[3].z.dispersion == 0.48);
    CHECK(cases[3].y.median == 0.85);
    CHECK(cases[3].y.dispersion == 0.26533);

    CHECK(cases[5].stories == 12);
    CHECK(cases[5].margin == 0.63);
    CHECK(cases[5].x.median == 0.3);
    CHECK(cases[5].y.median == 0.933);
    CHECK(cases[6].y.median == 1.086);
}

TEST_CASE("composition consistency holds for every case") {
    for (const auto& frame : builtin_cases()) {
        const LognormalSpec composed = compose(frame.x, frame.y);
        CHECK(std::fabs(composed.median - frame.z.median) <= 0.01);
        CHECK(std::fabs(composed.dispersion - frame.z.dispersion) <= 0.005);
    }
}

TEST_CASE("decomposition reproduces the tabulated system-only columns") {
    for (const auto& frame : builtin_cases()) {
        const LognormalSpec y = decompose(frame.z, frame.x);
        CHECK(std::fabs(y.median - frame.y.median) <= 0.005);
        CHECK(std::fabs(y.dispersion - frame.y.dispersion) <= 0.005);
    }
    // case 3 in particular
    const auto& c3 = builtin_cases()[2];
    const LognormalSpec y3 = decompose(c3.z, c3.x);
    CHECK(y3.median == doctest::Approx(1.0));
    CHECK(y3.dispersion == doctest::Approx(0.5004).epsilon(1e-3));
}

TEST_CASE("two-rate calibration hits its targets") {
    const auto& cases = builtin_cases();
    {
        const HazardModel h = calibrate_case(cases[0], CalibrationStrategy::two_rate);
        CHECK(annual_rate(cases[0].x, h) == doctest::Approx(0.215e-4).epsilon(1e-6));
        CHECK(annual_rate(cases[0].z, h) == doctest::Approx(2.569e-4).epsilon(1e-6));
    }
    {
        const HazardModel h = calibrate_case(cases[4], CalibrationStrategy::two_rate);
        CHECK(annual_rate(cases[4].x, h) == doctest::Approx(6.790e-4).epsilon(1e-6));
        CHECK(annual_rate(cases[4].z, h) == doctest::Approx(11.089e-4).epsilon(1e-6));
    }
}

TEST_CASE("calibration recovers a synthetic curve exactly") {
    const PowerLaw truth = PowerLaw::with_default_floor(2.1e-4, 3.1);
    const LognormalSpec x(1.3, 0.40);
    const LognormalSpec z(1.10, 0.48);
    const double lam_x = annual_rate(x, HazardModel(truth));
    const double lam_z = annual_rate(z, HazardModel(truth));
    const PowerLaw fit =
        calibrate_power_law({RateConstraint{x, lam_x}, RateConstraint{z, lam_z}});
    CHECK(fit.k == doctest::Approx(truth.k).epsilon(1e-6));
    CHECK(fit.k0 == doctest::Approx(truth.k0).epsilon(1e-6));
}

TEST_CASE("anchor-slope calibration") {
    const auto& cases = builtin_cases();
    // cases 1-3 share the margin-implied anchor near 0.805 g
    const HazardModel h = calibrate_case(cases[0], CalibrationStrategy::anchor_slope);
    CHECK(exceedance(h, 1.7 / 2.11) == doctest::Approx(two_percent_in_50yr_rate()).epsilon(1e-6));
    CHECK(annual_rate(cases[0].x, h) == doctest::Approx(0.215e-4).epsilon(1e-6));

    // case 4 has no usable anchor
    CHECK_THROWS_AS(calibrate_case(cases[3], CalibrationStrategy::anchor_slope),
                    CalibrationError);
}

TEST_CASE("group calibration") {
    const auto& cases = builtin_cases();
    const std::vector<FrameCase> goulet(cases.begin(), cases.begin() + 3);
    const std::vector<FrameCase> liel_tall(cases.begin() + 4, cases.begin() + 7);

    // one shared curve, least squares over six log-rates
    const HazardModel shared = calibrate_group(goulet, CalibrationStrategy::two_rate);
    for (const auto& frame : goulet) {
        const auto targets = reference_targets(frame.case_id, 1.0);
        REQUIRE(targets.has_value());
        // a single curve cannot hit all six exactly; it must stay in the
        // right neighborhood
        CHECK(annual_rate(frame.x, shared) / targets->a < 8.0);
        CHECK(annual_rate(frame.x, shared) / targets->a > 1.0 / 8.0);
    }

    // joint anchors are consistent for the first group...
    const HazardModel anchored = calibrate_group(goulet, CalibrationStrategy::anchor_slope);
    CHECK(exceedance(anchored, 0.805) ==
          doctest::Approx(two_percent_in_50yr_rate()).epsilon(0.01));
    // ...but spread beyond 2% for the tall-frame group
    CHECK_THROWS_AS(calibrate_group(liel_tall, CalibrationStrategy::anchor_slope),
                    CalibrationError);

    CHECK_THROWS_AS(calibrate_group({cases[0]}, CalibrationStrategy::two_rate),
                    CalibrationError);
}

TEST_CASE("reference target lookups") {
    const auto t50 = reference_targets(1, 50.0);
    REQUIRE(t50.has_value());
    CHECK(t50->b == 0.0119);
    CHECK(t50->err_pct == 7.62);
    CHECK(t50->error_parameter == 0.54);

    const auto t1 = reference_targets(6, 1.0);
    REQUIRE(t1.has_value());
    CHECK(t1->c == doctest::Approx(67.969e-4));
    CHECK(std::isnan(t1->var_product));

    CHECK_FALSE(reference_targets(1, 75.0).has_value());
    CHECK_FALSE(reference_targets(0, 50.0).has_value());
    CHECK_FALSE(reference_targets(8, 50.0).has_value());
}

TEST_CASE("reproduce: arithmetic identities and benchmark deltas for case 1") {
    const auto& frame = builtin_cases()[0];
    const auto results = reproduce(frame, {1.0, 50.0, 100.0});
    REQUIRE(results.size() == 3);

    const CaseResult& r1 = results[0];
    CHECK(r1.t_d == 1.0);
    CHECK(r1.report.lambda_rtr == doctest::Approx(0.215e-4).epsilon(1e-6));
    CHECK(r1.report.lambda_ensemble == doctest::Approx(2.569e-4).epsilon(1e-6));
    // the one-year back-calculated exact rate is a genuine prediction and
    // lands within a percent of the published 2.564e-4
    CHECK(r1.report.lambda_exact == doctest::Approx(2.564e-4).epsilon(0.05));
    REQUIRE(r1.targets.has_value());
    CHECK(r1.targets->b == doctest::Approx(2.564e-4));

    const CaseResult& r50 = results[1];
    // the ensemble column is an arithmetic identity of the calibration
    CHECK(r50.report.pf_ensemble == doctest::Approx(0.012763).epsilon(1e-4));
    CHECK(r50.pf_rtr == doctest::Approx(0.0011).epsilon(0.03));
    CHECK(r50.report.pf_ensemble > r50.report.pf_exact);
    // regression pin, cross-checked against an independent prototype of
    // the same pipeline (power-law stand-in hazard)
    CHECK(r50.report.pf_exact == doctest::Approx(0.01032).epsilon(5e-3));

    const CaseResult& r100 = results[2];
    CHECK(r100.report.pf_ensemble == doctest::Approx(0.025363).epsilon(1e-4));
    CHECK(r100.report.err_pct_pf > r50.report.err_pct_pf);
}

TEST_CASE("reproduce: system uncertainty lowers the risk of case 7") {
    const auto& frame = builtin_cases()[6];
    const auto results = reproduce(frame, {50.0});
    const CaseResult& r = results[0];
    const double ratio = r.report.pf_exact / r.pf_rtr;
    CHECK(ratio < 1.0);
    CHECK(std::fabs(ratio - 0.95) < 0.02);
}

TEST_CASE("ensemble dominance holds for every case and both strategies") {
    for (const auto& frame : builtin_cases()) {
        for (const CalibrationStrategy strategy :
             {CalibrationStrategy::two_rate, CalibrationStrategy::anchor_slope}) {
            if (strategy == CalibrationStrategy::anchor_slope && frame.case_id == 4) continue;
            for (const auto& r : reproduce(frame, {1.0, 50.0, 100.0}, strategy)) {
                CHECK(r.report.pf_ensemble >= r.report.pf_exact);
            }
        }
    }
}

TEST_CASE("errors grow with lifetime for every case") {
    for (const auto& frame : builtin_cases()) {
        const auto rows = reproduce(frame, {1.0, 50.0, 100.0});
        CHECK(rows[2].report.err_pct_pf > rows[1].report.err_pct_pf);
        CHECK(rows[1].report.err_pct_pf > rows[0].report.err_pct_lambda);
    }
}

TEST_CASE("error-parameter ordering tracks the computed errors within groups") {
    // group {1,2,3}: strictly decreasing error parameter and error
    std::vector<double> err_param, err_pf;
    for (int id : {1, 2, 3}) {
        const auto& frame = builtin_cases()[static_cast<std::size_t>(id - 1)];
        const auto rows = reproduce(frame, {50.0});
        err_param.push_back(rows[0].report.error_parameter);
        err_pf.push_back(rows[0].report.err_pct_pf);
    }
    CHECK(err_param[0] > err_param[1]);
    CHECK(err_param[1] > err_param[2]);
    CHECK(err_pf[0] > err_pf[1]);
    CHECK(err_pf[1] > err_pf[2]);

    // group {5,6,7}: case 5 is smallest on both counts; 6 vs 7 is not
    // asserted (the benchmark itself flags that pair as trend-breaking)
    std::vector<double> param567, err567;
    for (int id : {5, 6, 7}) {
        const auto& frame = builtin_cases()[static_cast<std::size_t>(id - 1)];
        const auto rows = reproduce(frame, {50.0});
        param567.push_back(rows[0].report.error_parameter);
        err567.push_back(rows[0].report.err_pct_pf);
    }
    CHECK(param567[0] < param567[1]);
    CHECK(param567[0] < param567[2]);
    CHECK(err567[0] < err567[1]);
    CHECK(err567[0] < err567[2]);
}

TEST_CASE("fragility profiles") {
    std::vector<double> grid;
    for (int i = 1; i <= 60; ++i) grid.push_back(0.05 * i);

    for (int id : {2, 4}) {
        const auto& frame = builtin_cases()[static_cast<std::size_t>(id - 1)];
        const auto rows = fragility_profiles(frame, grid);
        REQUIRE(rows.size() == grid.size());
        double worst = 0.0;
        for (const auto& row : rows) {
            worst = std::max(worst, std::fabs(row.f_z_composed - row.f_z_reported));
            CHECK(row.f_x >= 0.0);
            CHECK(row.f_x <= 1.0);
        }
        CHECK(worst <= 0.01);
    }

    // with the unrounded decomposition the curves coincide to roundoff
    FrameCase exact = builtin_cases()[1];
    exact.y = decompose(exact.z, exact.x);
    for (const auto& row : fragility_profiles(exact, grid)) {
        CHECK(std::fabs(row.f_z_composed - row.f_z_reported) <= 1e-12);
    }

    // all curves vanish toward zero intensity
    const auto tiny = fragility_profiles(builtin_cases()[0], {1e-6});
    CHECK(tiny[0].f_x < 1e-12);
    CHECK(tiny[0].f_z_reported < 1e-12);
    CHECK(tiny[0].f_z_composed < 1e-12);
}

TEST_SUITE_END();

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ergorisk/casebook.hpp"
#include "ergorisk/hazard.hpp"
#include "ergorisk/model_file.hpp"
#include "ergorisk/pulse_oracle.hpp"
#include "ergorisk/riskengine.hpp"
#include "ergorisk/toymodel.hpp"

namespace py = pybind11;
using namespace ergorisk;

namespace {

std::string spec_repr(const LognormalSpec& s) {
    std::ostringstream os;
    os << "LognormalSpec(median=" << s.median << ", dispersion=" << s.dispersion << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Failure rates and lifetime failure probabilities under rare-hazard "
              "load processes, separating record-to-record from system-parameter "
              "uncertainty";

    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_ArithmeticError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);

    // probcore
    py::class_<LognormalSpec>(m, "LognormalSpec")
        .def(py::init<double, double>(), py::arg("median"), py::arg("dispersion"))
        .def_readonly("median", &LognormalSpec::median)
        .def_readonly("dispersion", &LognormalSpec::dispersion)
        .def("log_mean", &LognormalSpec::log_mean)
        .def("__repr__", &spec_repr);
    m.def("std_normal_cdf", &std_normal_cdf, py::arg("u"));
    m.def("std_normal_pdf", &std_normal_pdf, py::arg("u"));
    m.def("std_normal_quantile", &std_normal_quantile, py::arg("p"));
    m.def("lognormal_cdf", &lognormal_cdf, py::arg("spec"), py::arg("x"));
    m.def("lognormal_pdf", &lognormal_pdf, py::arg("spec"), py::arg("x"));
    m.def("lognormal_quantile", &lognormal_quantile, py::arg("spec"), py::arg("p"));

    // fragility
    m.def("compose", &compose, py::arg("x"), py::arg("y"));
    m.def("decompose", &decompose, py::arg("z"), py::arg("x"));
    m.def("conditional_capacity", &conditional_capacity, py::arg("x"), py::arg("y_value"));
    m.def("product_density_numeric", &product_density_numeric, py::arg("x"), py::arg("y"),
          py::arg("z_value"));

    // hazard
    py::class_<PulseLognormal>(m, "PulseLognormal")
        .def(py::init<double, LognormalSpec>(), py::arg("eta"), py::arg("intensity"))
        .def_readonly("eta", &PulseLognormal::eta)
        .def_readonly("intensity", &PulseLognormal::intensity);
    py::class_<PowerLaw>(m, "PowerLaw")
        .def(py::init<double, double, double>(), py::arg("k0"), py::arg("k"), py::arg("im_min"))
        .def_static("with_default_floor", &PowerLaw::with_default_floor, py::arg("k0"),
                    py::arg("k"))
        .def_readonly("k0", &PowerLaw::k0)
        .def_readonly("k", &PowerLaw::k)
        .def_readonly("im_min", &PowerLaw::im_min);
    py::class_<Tabulated>(m, "Tabulated")
        .def_property_readonly("points",
                               [](const Tabulated& t) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& p : t.points) out.emplace_back(p.im, p.H);
                                   return out;
                               })
        .def_readonly("extend_slopes", &Tabulated::extend_slopes);
    m.def(
        "make_tabulated",
        [](const std::vector<std::pair<double, double>>& pts, bool extend) {
            std::vector<Tabulated::Point> points;
            points.reserve(pts.size());
            for (const auto& [im, H] : pts) points.push_back({im, H});
            return make_tabulated(std::move(points), extend);
        },
        py::arg("points"), py::arg("extend_slopes") = false);
    m.def("load_hazard_csv",
          py::overload_cast<const std::string&, bool>(&load_hazard_csv), py::arg("path"),
          py::arg("extend_slopes") = false);
    m.def("exceedance", &exceedance, py::arg("model"), py::arg("im"));
    m.def("density", &density, py::arg("model"), py::arg("im"));

    py::class_<PointConstraint>(m, "PointConstraint")
        .def(py::init<double, double>(), py::arg("im"), py::arg("rate"))
        .def_readonly("im", &PointConstraint::im)
        .def_readonly("rate", &PointConstraint::rate);
    py::class_<RateConstraint>(m, "RateConstraint")
        .def(py::init<LognormalSpec, double>(), py::arg("capacity"), py::arg("rate"))
        .def_readonly("capacity", &RateConstraint::capacity)
        .def_readonly("rate", &RateConstraint::rate);
    py::class_<CalibrationOptions>(m, "CalibrationOptions")
        .def(py::init([](double k_lo, double k_hi, double rel_tol) {
                 CalibrationOptions o;
                 o.k_lo = k_lo;
                 o.k_hi = k_hi;
                 o.rel_tol = rel_tol;
                 return o;
             }),
             py::arg("k_lo") = 0.5, py::arg("k_hi") = 8.0, py::arg("rel_tol") = 1e-6)
        .def_readonly("k_lo", &CalibrationOptions::k_lo)
        .def_readonly("k_hi", &CalibrationOptions::k_hi)
        .def_readonly("rel_tol", &CalibrationOptions::rel_tol);
    m.def("calibrate_power_law", &calibrate_power_law, py::arg("constraints"),
          py::arg("q") = QuadratureSettings{}, py::arg("options") = CalibrationOptions{});

    // riskengine
    py::class_<QuadratureSettings>(m, "QuadratureSettings")
        .def(py::init([](double u_span, int n_outer, int n_inner, double rel_tol) {
                 QuadratureSettings q{u_span, n_outer, n_inner, rel_tol};
                 q.validate();
                 return q;
             }),
             py::arg("u_span") = 8.0, py::arg("n_outer") = 401, py::arg("n_inner") = 2001,
             py::arg("rel_tol") = 1e-6)
        .def_readonly("u_span", &QuadratureSettings::u_span)
        .def_readonly("n_outer", &QuadratureSettings::n_outer)
        .def_readonly("n_inner", &QuadratureSettings::n_inner)
        .def_readonly("rel_tol", &QuadratureSettings::rel_tol)
        .def("refined", &QuadratureSettings::refined);
    py::class_<RiskReport>(m, "RiskReport")
        .def_readonly("lambda_rtr", &RiskReport::lambda_rtr)
        .def_readonly("lambda_ensemble", &RiskReport::lambda_ensemble)
        .def_readonly("lambda_exact", &RiskReport::lambda_exact)
        .def_readonly("pf_exact", &RiskReport::pf_exact)
        .def_readonly("pf_ensemble", &RiskReport::pf_ensemble)
        .def_readonly("err_pct_pf", &RiskReport::err_pct_pf)
        .def_readonly("err_pct_lambda", &RiskReport::err_pct_lambda)
        .def_readonly("error_parameter", &RiskReport::error_parameter)
        .def_readonly("var_product", &RiskReport::var_product)
        .def_readonly("t_d", &RiskReport::t_d);
    m.def("annual_rate", &annual_rate, py::arg("capacity"), py::arg("hazard"),
          py::arg("q") = QuadratureSettings{});
    m.def("annual_rate_cdf_form", &annual_rate_cdf_form, py::arg("capacity"), py::arg("hazard"),
          py::arg("q") = QuadratureSettings{});
    m.def("conditional_rate", &conditional_rate, py::arg("x"), py::arg("y_value"),
          py::arg("hazard"), py::arg("q") = QuadratureSettings{});
    m.def("lifetime_exact", &lifetime_exact, py::arg("x"), py::arg("y"), py::arg("hazard"),
          py::arg("t_d"), py::arg("q") = QuadratureSettings{});
    m.def("lifetime_from_rate", &lifetime_from_rate, py::arg("rate"), py::arg("t_d"));
    m.def("back_calc_rate", &back_calc_rate, py::arg("pf"), py::arg("t_d"));
    m.def("err_pct_pf", &err_pct_pf, py::arg("pf_ensemble"), py::arg("pf_exact"));
    m.def("err_pct_lambda", &err_pct_lambda, py::arg("lambda_ensemble"), py::arg("lambda_exact"));
    m.def("error_parameter", &error_parameter, py::arg("x"), py::arg("y"), py::arg("margin"));
    m.def("pf_variance_product", &pf_variance_product, py::arg("x"), py::arg("y"),
          py::arg("hazard"), py::arg("t_d"), py::arg("q") = QuadratureSettings{});
    m.def("assess", &assess, py::arg("x"), py::arg("y"), py::arg("hazard"), py::arg("margin"),
          py::arg("t_d"), py::arg("q") = QuadratureSettings{});

    // toymodel
    py::class_<ToyProblem>(m, "ToyProblem")
        .def(py::init([](double eta, LognormalSpec s, LognormalSpec x, LognormalSpec y) {
                 ToyProblem p;
                 p.eta = eta;
                 p.s = s;
                 p.x = x;
                 p.y = y;
                 return p;
             }),
             py::arg("eta") = 1e-2, py::arg("s") = LognormalSpec(1.0, 1.0),
             py::arg("x") = LognormalSpec(4.0, 0.4), py::arg("y") = LognormalSpec(0.85, 0.4))
        .def_readonly("eta", &ToyProblem::eta)
        .def_readonly("s", &ToyProblem::s)
        .def_readonly("x", &ToyProblem::x)
        .def_readonly("y", &ToyProblem::y);
    py::enum_<RateConvention>(m, "RateConvention")
        .value("upcrossing", RateConvention::upcrossing)
        .value("first_passage", RateConvention::first_passage);
    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("sigma_ln_y", SweepAxis::sigma_ln_y)
        .value("t_d", SweepAxis::t_d);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis", &SweepRow::axis)
        .def_readonly("pf_exact", &SweepRow::pf_exact)
        .def_readonly("pf_ensemble", &SweepRow::pf_ensemble)
        .def_readonly("err_pct", &SweepRow::err_pct);
    m.def("limit_state", &limit_state, py::arg("s"), py::arg("x"), py::arg("y"));
    m.def("toy_ensemble_rate", &toy_ensemble_rate, py::arg("problem"),
          py::arg("convention") = RateConvention::upcrossing);
    m.def("toy_conditional_rate", &toy_conditional_rate, py::arg("problem"), py::arg("y_value"),
          py::arg("convention") = RateConvention::upcrossing);
    m.def("toy_exact_pf", &toy_exact_pf, py::arg("problem"), py::arg("t_d"),
          py::arg("q") = QuadratureSettings{}, py::arg("convention") = RateConvention::upcrossing);
    m.def("toy_ensemble_pf", &toy_ensemble_pf, py::arg("problem"), py::arg("t_d"),
          py::arg("convention") = RateConvention::upcrossing);
    m.def("toy_error_sweep", &toy_error_sweep, py::arg("problem"), py::arg("axis"),
          py::arg("grid"), py::arg("t_d"), py::arg("q") = QuadratureSettings{},
          py::arg("convention") = RateConvention::upcrossing);

    // pulse oracle
    py::enum_<YMode>(m, "YMode")
        .value("non_ergodic", YMode::non_ergodic)
        .value("ergodic", YMode::ergodic);
    py::class_<PulseSimConfig>(m, "PulseSimConfig")
        .def(py::init([](ToyProblem problem, double t_d, std::int64_t n_structures,
                         std::uint64_t seed, YMode y_mode) {
                 PulseSimConfig c;
                 c.problem = problem;
                 c.t_d = t_d;
                 c.n_structures = n_structures;
                 c.seed = seed;
                 c.y_mode = y_mode;
                 return c;
             }),
             py::arg("problem") = ToyProblem{}, py::arg("t_d") = 50.0,
             py::arg("n_structures") = 1'000'000, py::arg("seed") = 1,
             py::arg("y_mode") = YMode::non_ergodic)
        .def_readonly("problem", &PulseSimConfig::problem)
        .def_readonly("t_d", &PulseSimConfig::t_d)
        .def_readonly("n_structures", &PulseSimConfig::n_structures)
        .def_readonly("seed", &PulseSimConfig::seed)
        .def_readonly("y_mode", &PulseSimConfig::y_mode);
    py::class_<SimEstimate>(m, "SimEstimate")
        .def_readonly("pf_hat", &SimEstimate::pf_hat)
        .def_readonly("std_error", &SimEstimate::std_error)
        .def_readonly("n", &SimEstimate::n);
    m.def("simulate", &simulate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_rate", &simulate_rate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    // casebook
    py::enum_<CaseSource>(m, "CaseSource")
        .value("goulet", CaseSource::goulet)
        .value("liel", CaseSource::liel);
    py::class_<FrameCase>(m, "FrameCase")
        .def_readonly("case_id", &FrameCase::case_id)
        .def_readonly("source", &FrameCase::source)
        .def_readonly("stories", &FrameCase::stories)
        .def_readonly("period_t1", &FrameCase::period_t1)
        .def_readonly("margin", &FrameCase::margin)
        .def_readonly("x", &FrameCase::x)
        .def_readonly("z", &FrameCase::z)
        .def_readonly("y", &FrameCase::y);
    py::enum_<CalibrationStrategy>(m, "CalibrationStrategy")
        .value("two_rate", CalibrationStrategy::two_rate)
        .value("anchor_slope", CalibrationStrategy::anchor_slope);
    py::class_<TargetRow>(m, "TargetRow")
        .def_readonly("a", &TargetRow::a)
        .def_readonly("b", &TargetRow::b)
        .def_readonly("c", &TargetRow::c)
        .def_readonly("ratio_b_a", &TargetRow::ratio_b_a)
        .def_readonly("err_pct", &TargetRow::err_pct)
        .def_readonly("error_parameter", &TargetRow::error_parameter)
        .def_readonly("var_product", &TargetRow::var_product);
    py::class_<CaseResult>(m, "CaseResult")
        .def_readonly("case_id", &CaseResult::case_id)
        .def_readonly("t_d", &CaseResult::t_d)
        .def_readonly("strategy", &CaseResult::strategy)
        .def_readonly("hazard_used", &CaseResult::hazard_used)
        .def_readonly("report", &CaseResult::report)
        .def_readonly("pf_rtr", &CaseResult::pf_rtr)
        .def_readonly("targets", &CaseResult::targets);
    py::class_<FragilityProfileRow>(m, "FragilityProfileRow")
        .def_readonly("im", &FragilityProfileRow::im)
        .def_readonly("f_x", &FragilityProfileRow::f_x)
        .def_readonly("f_z_reported", &FragilityProfileRow::f_z_reported)
        .def_readonly("f_z_composed", &FragilityProfileRow::f_z_composed);
    m.def("builtin_cases", &builtin_cases, py::return_value_policy::copy);
    m.def("two_percent_in_50yr_rate", &two_percent_in_50yr_rate);
    m.def("calibrate_case", &calibrate_case, py::arg("frame"), py::arg("strategy"),
          py::arg("q") = QuadratureSettings{});
    m.def("calibrate_group", &calibrate_group, py::arg("frames"), py::arg("strategy"),
          py::arg("q") = QuadratureSettings{});
    m.def("reference_targets", &reference_targets, py::arg("case_id"), py::arg("t_d"));
    m.def("reproduce", &reproduce, py::arg("frame"), py::arg("t_ds"),
          py::arg("strategy") = CalibrationStrategy::two_rate,
          py::arg("q") = QuadratureSettings{}, py::call_guard<py::gil_scoped_release>());
    m.def("fragility_profiles", &fragility_profiles, py::arg("frame"), py::arg("im_grid"));
}

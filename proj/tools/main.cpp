#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergorisk/casebook.hpp"
#include "ergorisk/format.hpp"
#include "ergorisk/model_file.hpp"
#include "ergorisk/pulse_oracle.hpp"
#include "ergorisk/riskengine.hpp"
#include "ergorisk/toymodel.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;

// Output is assembled in full before anything is written, so a failure
// partway through a computation never leaves a truncated file or stream.
void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw ergorisk::ModelError("cannot open output file " + output_path);
    out << text;
}

ordered_json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

// ---------------------------------------------------------------- assess --

ordered_json report_to_json(const ergorisk::RiskReport& r) {
    ordered_json j;
    j["t_D"] = r.t_d;
    j["lambda_rtr"] = r.lambda_rtr;
    j["lambda_ensemble"] = r.lambda_ensemble;
    j["lambda_exact"] = r.lambda_exact;
    j["pf_exact"] = r.pf_exact;
    j["pf_ensemble"] = r.pf_ensemble;
    j["err_pct_pf"] = r.err_pct_pf;
    j["err_pct_lambda"] = r.err_pct_lambda;
    j["error_parameter"] = json_number(r.error_parameter);
    j["var_product"] = r.var_product;
    return j;
}

int run_assess(const std::string& model_path, const std::vector<double>& t_override,
               const std::string& out_format, const std::string& output_path) {
    ergorisk::ModelFile model = ergorisk::load_model_file(model_path);
    const std::vector<double>& t_ds = t_override.empty() ? model.t_ds : t_override;

    std::vector<ergorisk::RiskReport> reports;
    for (const double t : t_ds) {
        reports.push_back(ergorisk::assess(model.x, model.y, model.hazard, model.margin, t,
                                           model.quadrature));
    }

    std::string text;
    if (out_format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& r : reports) rows.push_back(report_to_json(r));
        text = rows.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "t_D,lambda_rtr,lambda_ensemble,lambda_exact,pf_exact,pf_ensemble,"
              "err_pct_pf,err_pct_lambda,error_parameter,var_product\n";
        for (const auto& r : reports) {
            os << ergorisk::format_sci(r.t_d) << ',' << ergorisk::format_sci(r.lambda_rtr) << ','
               << ergorisk::format_sci(r.lambda_ensemble) << ','
               << ergorisk::format_sci(r.lambda_exact) << ',' << ergorisk::format_sci(r.pf_exact)
               << ',' << ergorisk::format_sci(r.pf_ensemble) << ','
               << ergorisk::format_sci(r.err_pct_pf) << ','
               << ergorisk::format_sci(r.err_pct_lambda) << ','
               << ergorisk::format_sci(r.error_parameter) << ','
               << ergorisk::format_sci(r.var_product) << '\n';
        }
        text = os.str();
    }
    emit(text, output_path);
    return 0;
}

// ------------------------------------------------------------------- toy --

std::vector<double> parse_grid(const std::string& spec) {
    // start:stop:count[:log]
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) {
        throw ergorisk::ModelError("grid: expected start:stop:count[:log], got \"" + spec + "\"");
    }
    double start = 0.0, stop = 0.0;
    long count = 0;
    try {
        start = std::stod(parts[0]);
        stop = std::stod(parts[1]);
        count = std::stol(parts[2]);
    } catch (const std::exception&) {
        throw ergorisk::ModelError("grid: could not parse \"" + spec + "\"");
    }
    bool log_spaced = false;
    if (parts.size() == 4) {
        if (parts[3] != "log" && parts[3] != "lin") {
            throw ergorisk::ModelError("grid: spacing must be \"log\" or \"lin\"");
        }
        log_spaced = parts[3] == "log";
    }
    if (count < 1) throw ergorisk::ModelError("grid: count must be >= 1");
    if (log_spaced && (!(start > 0.0) || !(stop > 0.0))) {
        throw ergorisk::ModelError("grid: log spacing needs positive endpoints");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (long i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        grid.push_back(log_spaced ? start * std::pow(stop / start, f)
                                  : start + (stop - start) * f);
    }
    return grid;
}

int run_toy(const std::string& case_name, const std::string& sweep, const std::string& grid_spec,
            double t_d, double eta, const std::string& output_path) {
    ergorisk::ToyProblem p;
    p.eta = eta;
    if (case_name == "ref" || case_name == "a") {
        // reference values
    } else if (case_name == "b") {
        p.y = ergorisk::LognormalSpec(p.y.median, 0.2);
    } else if (case_name == "c") {
        p.s = ergorisk::LognormalSpec(2.0, 1.0);
        p.y = ergorisk::LognormalSpec(p.y.median, 0.2);
    } else {
        throw ergorisk::ModelError("toy: unknown case \"" + case_name + "\"");
    }

    ergorisk::SweepAxis axis;
    std::string default_grid;
    if (sweep == "sigma") {
        axis = ergorisk::SweepAxis::sigma_ln_y;
        // +-20% around the case's dispersion
        default_grid = ergorisk::format_sci(0.8 * p.y.dispersion) + ":" +
                       ergorisk::format_sci(1.2 * p.y.dispersion) + ":9";
    } else if (sweep == "time") {
        axis = ergorisk::SweepAxis::t_d;
        default_grid = "1:100:25:log";
    } else {
        throw ergorisk::ModelError("toy: sweep must be \"sigma\" or \"time\"");
    }

    const std::vector<double> grid = parse_grid(grid_spec.empty() ? default_grid : grid_spec);
    const std::vector<ergorisk::SweepRow> rows = ergorisk::toy_error_sweep(p, axis, grid, t_d);

    std::ostringstream os;
    os << "axis,pf_exact,pf_ensemble,err_pct\n";
    for (const auto& row : rows) {
        os << ergorisk::format_sci(row.axis) << ',' << ergorisk::format_sci(row.pf_exact) << ','
           << ergorisk::format_sci(row.pf_ensemble) << ',' << ergorisk::format_sci(row.err_pct)
           << '\n';
    }
    emit(os.str(), output_path);
    return 0;
}

// ------------------------------------------------------------- reproduce --

std::string strategy_name(ergorisk::CalibrationStrategy s) {
    return s == ergorisk::CalibrationStrategy::two_rate ? "two_rate" : "anchor_slope";
}

int run_reproduce(const std::string& case_sel, const std::string& strategy_name_in,
                  const std::vector<double>& t_ds, const std::string& out_format,
                  const std::string& output_path) {
    ergorisk::CalibrationStrategy strategy;
    if (strategy_name_in == "two_rate") {
        strategy = ergorisk::CalibrationStrategy::two_rate;
    } else if (strategy_name_in == "anchor_slope") {
        strategy = ergorisk::CalibrationStrategy::anchor_slope;
    } else {
        throw ergorisk::ModelError("reproduce: unknown strategy \"" + strategy_name_in + "\"");
    }

    std::vector<int> case_ids;
    if (case_sel == "all") {
        for (int i = 1; i <= 7; ++i) case_ids.push_back(i);
    } else {
        try {
            case_ids.push_back(std::stoi(case_sel));
        } catch (const std::exception&) {
            throw ergorisk::ModelError("reproduce: case must be 1..7 or \"all\"");
        }
    }

    std::vector<ergorisk::CaseResult> results;
    for (const int id : case_ids) {
        if (id < 1 || id > 7) throw ergorisk::ModelError("reproduce: case must be 1..7");
        const auto& frame = ergorisk::builtin_cases()[static_cast<std::size_t>(id - 1)];
        auto rows = ergorisk::reproduce(frame, t_ds, strategy);
        results.insert(results.end(), rows.begin(), rows.end());
    }

    std::string text;
    if (out_format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            ordered_json j;
            j["case"] = r.case_id;
            j["strategy"] = strategy_name(r.strategy);
            j["report"] = report_to_json(r.report);
            j["pf_rtr"] = r.pf_rtr;
            if (const auto* pl = std::get_if<ergorisk::PowerLaw>(&r.hazard_used)) {
                j["hazard"] = {{"k0", pl->k0}, {"k", pl->k}, {"im_min", pl->im_min}};
            }
            if (r.targets) {
                ordered_json t;
                t["a"] = r.targets->a;
                t["b"] = r.targets->b;
                t["c"] = r.targets->c;
                t["ratio_b_a"] = r.targets->ratio_b_a;
                t["err_pct"] = r.targets->err_pct;
                t["error_parameter"] = json_number(r.targets->error_parameter);
                t["var_product"] = json_number(r.targets->var_product);
                j["reference"] = t;
            } else {
                j["reference"] = nullptr;
            }
            arr.push_back(j);
        }
        text = arr.dump(2) + "\n";
    } else {
        // Rows mirror the benchmark tables: rates for t_D = 1, lifetime
        // probabilities otherwise, plus reference and delta columns.
        std::ostringstream os;
        os << "case,t_D,a_rtr,b_exact,c_ensemble,ratio_b_a,err_pct,error_parameter,"
              "var_product,ref_a,ref_b,ref_c,ref_ratio_b_a,ref_err_pct,delta_a,delta_b,"
              "delta_c,delta_err_pct\n";
        for (const auto& r : results) {
            const bool rate_row = r.t_d == 1.0;
            const double a = rate_row ? r.report.lambda_rtr : r.pf_rtr;
            const double b = rate_row ? r.report.lambda_exact : r.report.pf_exact;
            const double c = rate_row ? r.report.lambda_ensemble : r.report.pf_ensemble;
            const double err = rate_row ? r.report.err_pct_lambda : r.report.err_pct_pf;
            os << r.case_id << ',' << ergorisk::format_sci(r.t_d) << ','
               << ergorisk::format_sci(a) << ',' << ergorisk::format_sci(b) << ','
               << ergorisk::format_sci(c) << ',' << ergorisk::format_sci(b / a) << ','
               << ergorisk::format_sci(err) << ','
               << ergorisk::format_sci(r.report.error_parameter) << ','
               << ergorisk::format_sci(r.report.var_product);
            if (r.targets) {
                os << ',' << ergorisk::format_sci(r.targets->a) << ','
                   << ergorisk::format_sci(r.targets->b) << ','
                   << ergorisk::format_sci(r.targets->c) << ','
                   << ergorisk::format_sci(r.targets->ratio_b_a) << ','
                   << ergorisk::format_sci(r.targets->err_pct) << ','
                   << ergorisk::format_sci(a - r.targets->a) << ','
                   << ergorisk::format_sci(b - r.targets->b) << ','
                   << ergorisk::format_sci(c - r.targets->c) << ','
                   << ergorisk::format_sci(err - r.targets->err_pct);
            } else {
                os << ",,,,,,,,";
            }
            os << '\n';
        }
        text = os.str();
    }
    emit(text, output_path);
    return 0;
}

// ---------------------------------------------------------------- oracle --

int run_oracle(std::int64_t n, std::uint64_t seed, double t_d, const std::string& y_mode,
               const ergorisk::ToyProblem& problem, const std::string& output_path) {
    ergorisk::PulseSimConfig cfg;
    cfg.problem = problem;
    cfg.t_d = t_d;
    cfg.n_structures = n;
    cfg.seed = seed;
    if (y_mode == "non_ergodic") {
        cfg.y_mode = ergorisk::YMode::non_ergodic;
    } else if (y_mode == "ergodic") {
        cfg.y_mode = ergorisk::YMode::ergodic;
    } else {
        throw ergorisk::ModelError("oracle: y-mode must be non_ergodic or ergodic");
    }
    const ergorisk::SimEstimate est = ergorisk::simulate(cfg);
    std::ostringstream os;
    os << "pf_hat,std_error,n\n"
       << ergorisk::format_sci(est.pf_hat) << ',' << ergorisk::format_sci(est.std_error) << ','
       << est.n << '\n';
    emit(os.str(), output_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Annual failure rates and lifetime failure probabilities for structures "
                 "under rare-hazard load processes, with the fixed-per-structure part of "
                 "the capacity uncertainty integrated outside the time integral"};
    app.require_subcommand(1);

    // assess
    std::string model_path, out_format = "csv", output_path;
    std::vector<double> t_override;
    auto* assess_cmd = app.add_subcommand("assess", "Evaluate a model file");
    assess_cmd->add_option("--model", model_path, "model JSON file")->required();
    assess_cmd->add_option("--t", t_override, "lifetimes in years (overrides the model)")->delimiter(',');
    assess_cmd->add_option("--out", out_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    assess_cmd->add_option("--output", output_path, "write to file instead of stdout");

    // toy
    std::string toy_case = "ref", toy_sweep = "time", toy_grid;
    double toy_t = 50.0, toy_eta = 1e-2;
    auto* toy_cmd = app.add_subcommand("toy", "Closed-form pulse problem error sweeps");
    toy_cmd->add_option("--case", toy_case, "ref, a, b or c")
        ->check(CLI::IsMember({"ref", "a", "b", "c"}));
    toy_cmd->add_option("--sweep", toy_sweep, "sigma or time")
        ->check(CLI::IsMember({"sigma", "time"}));
    toy_cmd->add_option("--grid", toy_grid, "start:stop:count[:log]");
    toy_cmd->add_option("--t", toy_t, "lifetime for sigma sweeps (years)");
    toy_cmd->add_option("--eta", toy_eta, "pulse arrival rate (1/year)");
    toy_cmd->add_option("--output", output_path, "write to file instead of stdout");

    // reproduce
    std::string repro_case = "all", repro_strategy = "two_rate";
    std::vector<double> repro_t = {1.0, 50.0, 100.0};
    auto* repro_cmd = app.add_subcommand("reproduce", "Recompute the benchmark frame set");
    repro_cmd->add_option("--case", repro_case, "1..7 or all");
    repro_cmd->add_option("--strategy", repro_strategy, "two_rate or anchor_slope")
        ->check(CLI::IsMember({"two_rate", "anchor_slope"}));
    repro_cmd->add_option("--t", repro_t, "lifetimes in years")->delimiter(',');
    repro_cmd->add_option("--out", out_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    repro_cmd->add_option("--output", output_path, "write to file instead of stdout");

    // oracle
    std::int64_t oracle_n = 1'000'000;
    std::uint64_t oracle_seed = 1;
    double oracle_t = 50.0;
    std::string oracle_mode = "non_ergodic";
    ergorisk::ToyProblem oracle_problem;
    double s_median = 1.0, s_sigma = 1.0, x_median = 4.0, x_sigma = 0.4, y_median = 0.85,
           y_sigma = 0.4, oracle_eta = 1e-2;
    auto* oracle_cmd = app.add_subcommand("oracle", "Monte Carlo pulse-process simulator");
    oracle_cmd->add_option("--n", oracle_n, "number of structures");
    oracle_cmd->add_option("--seed", oracle_seed, "RNG seed");
    oracle_cmd->add_option("--t", oracle_t, "lifetime in years");
    oracle_cmd->add_option("--y-mode", oracle_mode, "non_ergodic or ergodic")
        ->check(CLI::IsMember({"non_ergodic", "ergodic"}));
    oracle_cmd->add_option("--eta", oracle_eta, "pulse arrival rate (1/year)");
    oracle_cmd->add_option("--s-median", s_median, "pulse intensity median");
    oracle_cmd->add_option("--s-sigma", s_sigma, "pulse intensity dispersion");
    oracle_cmd->add_option("--x-median", x_median, "renewed factor median");
    oracle_cmd->add_option("--x-sigma", x_sigma, "renewed factor dispersion");
    oracle_cmd->add_option("--y-median", y_median, "fixed factor median");
    oracle_cmd->add_option("--y-sigma", y_sigma, "fixed factor dispersion");
    oracle_cmd->add_option("--output", output_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (assess_cmd->parsed()) return run_assess(model_path, t_override, out_format, output_path);
        if (toy_cmd->parsed()) return run_toy(toy_case, toy_sweep, toy_grid, toy_t, toy_eta, output_path);
        if (repro_cmd->parsed()) {
            return run_reproduce(repro_case, repro_strategy, repro_t, out_format, output_path);
        }
        if (oracle_cmd->parsed()) {
            oracle_problem.eta = oracle_eta;
            oracle_problem.s = ergorisk::LognormalSpec(s_median, s_sigma);
            oracle_problem.x = ergorisk::LognormalSpec(x_median, x_sigma);
            oracle_problem.y = ergorisk::LognormalSpec(y_median, y_sigma);
            return run_oracle(oracle_n, oracle_seed, oracle_t, oracle_mode, oracle_problem,
                              output_path);
        }
    } catch (const ergorisk::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const ergorisk::CalibrationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const ergorisk::ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSchema;
    }
    return 0;
}

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ergorisk/format.hpp"
#include "ergorisk/pulse_oracle.hpp"
#include "ergorisk/toymodel.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
    const char* cli = std::getenv("ERGORISK_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "ERGORISK_CLI must point at the command-line binary");
    const std::string command = std::string("'") + cli + "' " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "ergorisk_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

const char* kToyModelJson = R"({
  "fragility": {
    "x": {"median": 4.0, "dispersion": 0.4},
    "y": {"median": 0.85, "dispersion": 0.4}
  },
  "hazard": {"pulse": {"eta": 1e-2, "median": 1.0, "dispersion": 1.0}},
  "analysis": {"t_D": [50]}
})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("assess reproduces the toy problem") {
    const fs::path model = write_file("toy.json", kToyModelJson);
    const RunResult run = run_cli("assess --model '" + model.string() + "' --t 50");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0][0] == "t_D");
    const double pf_exact = std::stod(rows[1][4]);
    const double expected =
        ergorisk::toy_exact_pf(ergorisk::ToyProblem{}, 50.0, {},
                               ergorisk::RateConvention::first_passage);
    CHECK(std::fabs(pf_exact / expected - 1.0) < 1e-3);
}

TEST_CASE("assess prints a zero error column for a deterministic system factor") {
    const fs::path model = write_file("flat.json", R"({
      "fragility": {
        "x": {"median": 4.0, "dispersion": 0.4},
        "y": {"median": 1.0, "dispersion": 0.0}
      },
      "hazard": {"pulse": {"eta": 1e-2, "median": 1.0, "dispersion": 1.0}}
    })");
    const RunResult run = run_cli("assess --model '" + model.string() + "' --t 50");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][6] == "0.00000e+00");  // err_pct_pf
    CHECK(rows[1][8] == "nan");          // no margin given
}

TEST_CASE("assess accepts the x+z fragility style") {
    const fs::path model = write_file("xz.json", R"({
      "fragility": {
        "x": {"median": 1.7, "dispersion": 0.30},
        "z": {"median": 1.7, "dispersion": 0.58},
        "margin": 2.11
      },
      "hazard": {"power_law": {"k0": 9.4e-5, "k": 4.49}},
      "analysis": {"t_D": [50]}
    })");
    const RunResult run = run_cli("assess --model '" + model.string() + "'");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][8]) > 0.0);  // error_parameter present
}

TEST_CASE("malformed or invalid models exit 2 with no partial output") {
    const fs::path broken = write_file("broken.json", "{ not json");
    const RunResult run = run_cli("assess --model '" + broken.string() + "'");
    CHECK(run.exit_code == 2);
    CHECK(run.output.find("t_D,") == std::string::npos);
    CHECK(run.output.find("invalid JSON") != std::string::npos);

    const RunResult missing = run_cli("assess --model /nonexistent/model.json");
    CHECK(missing.exit_code == 2);

    const fs::path bad_schema = write_file("bad_schema.json", R"({
      "fragility": {"x": {"median": 4.0, "dispersion": 0.4}},
      "hazard": {"pulse": {"eta": 1e-2, "median": 1.0, "dispersion": 1.0}}
    })");
    const RunResult schema = run_cli("assess --model '" + bad_schema.string() + "'");
    CHECK(schema.exit_code == 2);
    CHECK(schema.output.find("fragility") != std::string::npos);

    const fs::path bad_member = write_file("bad_member.json", R"({
      "fragility": {
        "x": {"median": -4.0, "dispersion": 0.4},
        "y": {"median": 1.0, "dispersion": 0.1}
      },
      "hazard": {"pulse": {"eta": 1e-2, "median": 1.0, "dispersion": 1.0}}
    })");
    const RunResult member = run_cli("assess --model '" + bad_member.string() + "'");
    CHECK(member.exit_code == 2);
    CHECK(member.output.find("fragility.x.median") != std::string::npos);
}

TEST_CASE("numeric non-convergence exits 3 and names the failing integral") {
    const fs::path model = write_file("tight.json", R"({
      "fragility": {
        "x": {"median": 4.0, "dispersion": 0.4},
        "y": {"median": 0.85, "dispersion": 0.4}
      },
      "hazard": {"pulse": {"eta": 1e-2, "median": 1.0, "dispersion": 1.0}},
      "analysis": {"quadrature": {"n_inner": 5, "n_outer": 5, "rel_tol": 1e-14}}
    })");
    const RunResult run = run_cli("assess --model '" + model.string() + "' --t 50");
    CHECK(run.exit_code == 3);
    CHECK(run.output.find("annual_rate") != std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    const RunResult a = run_cli("reproduce --case 3 --t 1,50");
    const RunResult b = run_cli("reproduce --case 3 --t 1,50");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    const RunResult s1 = run_cli("toy --case c --sweep time --grid 0.5:50:8:log");
    const RunResult s2 = run_cli("toy --case c --sweep time --grid 0.5:50:8:log");
    REQUIRE(s1.exit_code == 0);
    CHECK(s1.output == s2.output);
}

TEST_CASE("reproduce output round-trips through its own formatting") {
    const RunResult run = run_cli("reproduce --case 5 --t 1,50,100");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 4);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        // case id column is an integer; every later column re-formats to
        // exactly the printed text
        for (std::size_t c = 1; c < rows[r].size(); ++c) {
            const std::string& field = rows[r][c];
            if (field.empty()) continue;
            CHECK(ergorisk::format_sci(std::stod(field)) == field);
        }
    }
}

TEST_CASE("reproduce emits reference and delta columns for benchmark lifetimes") {
    const RunResult run = run_cli("reproduce --case 1 --t 50");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 2);
    const auto& header = rows[0];
    const auto& row = rows[1];
    REQUIRE(header.size() == row.size());
    // ref_c is the published ensemble probability
    std::size_t ref_c = 0;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "ref_c") ref_c = i;
    }
    REQUIRE(ref_c > 0);
    CHECK(std::stod(row[ref_c]) == doctest::Approx(0.0128));
}

TEST_CASE("json output mode") {
    const fs::path model = write_file("toy2.json", kToyModelJson);
    const RunResult run = run_cli("assess --model '" + model.string() + "' --out json");
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.find("\"pf_exact\"") != std::string::npos);
    const RunResult repro = run_cli("reproduce --case 2 --t 50 --out json");
    REQUIRE(repro.exit_code == 0);
    CHECK(repro.output.find("\"reference\"") != std::string::npos);
}

TEST_CASE("toy command matches the library sweep") {
    const RunResult run = run_cli("toy --case b --sweep sigma --grid 0.1:0.3:3 --t 40");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 4);
    ergorisk::ToyProblem p;
    p.y = ergorisk::LognormalSpec(0.85, 0.2);
    const auto expected =
        ergorisk::toy_error_sweep(p, ergorisk::SweepAxis::sigma_ln_y, {0.1, 0.2, 0.3}, 40.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i + 1][0] == ergorisk::format_sci(expected[i].axis));
        CHECK(rows[i + 1][1] == ergorisk::format_sci(expected[i].pf_exact));
        CHECK(rows[i + 1][3] == ergorisk::format_sci(expected[i].err_pct));
    }
}

TEST_CASE("oracle command matches the library simulator") {
    const RunResult run = run_cli("oracle --n 20000 --seed 3 --t 50 --y-mode ergodic");
    REQUIRE(run.exit_code == 0);
    const auto rows = parse_csv(run.output);
    REQUIRE(rows.size() == 2);
    ergorisk::PulseSimConfig cfg;
    cfg.n_structures = 20000;
    cfg.seed = 3;
    cfg.y_mode = ergorisk::YMode::ergodic;
    const ergorisk::SimEstimate est = ergorisk::simulate(cfg);
    CHECK(rows[1][0] == ergorisk::format_sci(est.pf_hat));
    CHECK(rows[1][2] == "20000");
}

TEST_CASE("table hazards load relative to the model file") {
    const fs::path csv = write_file("curve.csv", "im,H\n0.1,0.05\n0.5,1e-3\n2.0,1e-5\n");
    const fs::path model = write_file("table_model.json", R"({
      "fragility": {
        "x": {"median": 0.6, "dispersion": 0.3},
        "y": {"median": 1.0, "dispersion": 0.2}
      },
      "hazard": {"table": "curve.csv"}
    })");
    const RunResult run = run_cli("assess --model '" + model.string() + "' --t 50");
    REQUIRE(run.exit_code == 0);

    const fs::path bad_csv = write_file("bad_curve.csv", "im,H\n0.1,0.05\n0.05,0.1\n");
    const fs::path bad_model = write_file("bad_table_model.json", R"({
      "fragility": {
        "x": {"median": 0.6, "dispersion": 0.3},
        "y": {"median": 1.0, "dispersion": 0.2}
      },
      "hazard": {"table": "bad_curve.csv"}
    })");
    const RunResult bad = run_cli("assess --model '" + bad_model.string() + "' --t 50");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("row 3") != std::string::npos);
}

TEST_CASE("output lands in a file when requested") {
    const fs::path out = scratch_dir() / "sweep.csv";
    std::error_code ec;
    fs::remove(out, ec);
    const RunResult run =
        run_cli("toy --case a --sweep time --grid 1:10:3 --output '" + out.string() + "'");
    REQUIRE(run.exit_code == 0);
    CHECK(run.output.empty());
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "axis,pf_exact,pf_ensemble,err_pct");
}

TEST_SUITE_END();

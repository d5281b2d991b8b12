#include "ergorisk/model_file.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ergorisk/fragility.hpp"

namespace ergorisk {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ModelError(path + ": " + msg);
}

const json& member(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

double positive(const json& v, const std::string& path) {
    const double x = number(v, path);
    if (!(x > 0.0) || !std::isfinite(x)) fail(path, "expected a positive finite number");
    return x;
}

double non_negative(const json& v, const std::string& path) {
    const double x = number(v, path);
    if (!(x >= 0.0) || !std::isfinite(x)) fail(path, "expected a non-negative finite number");
    return x;
}

LognormalSpec spec_member(const json& obj, const std::string& path, const std::string& key) {
    const json& s = member(obj, path, key);
    const std::string p = path + "." + key;
    if (!s.is_object()) fail(p, "expected an object with median and dispersion");
    for (auto it = s.begin(); it != s.end(); ++it) {
        if (it.key() != "median" && it.key() != "dispersion") {
            fail(p + "." + it.key(), "unknown member");
        }
    }
    return LognormalSpec(positive(member(s, p, "median"), p + ".median"),
                         non_negative(member(s, p, "dispersion"), p + ".dispersion"));
}

HazardModel parse_hazard(const json& h, const std::string& base_dir) {
    if (!h.is_object()) fail("hazard", "expected an object");
    int variants = static_cast<int>(h.contains("pulse")) + static_cast<int>(h.contains("power_law")) +
                   static_cast<int>(h.contains("table"));
    if (variants != 1) {
        fail("hazard", "exactly one of \"pulse\", \"power_law\", \"table\" required");
    }
    if (h.contains("pulse")) {
        const json& p = h["pulse"];
        const std::string path = "hazard.pulse";
        return PulseLognormal(
            non_negative(member(p, path, "eta"), path + ".eta"),
            LognormalSpec(positive(member(p, path, "median"), path + ".median"),
                          non_negative(member(p, path, "dispersion"), path + ".dispersion")));
    }
    if (h.contains("power_law")) {
        const json& p = h["power_law"];
        const std::string path = "hazard.power_law";
        const double k0 = positive(member(p, path, "k0"), path + ".k0");
        const double k = positive(member(p, path, "k"), path + ".k");
        if (p.contains("im_min")) {
            return PowerLaw(k0, k, positive(p["im_min"], path + ".im_min"));
        }
        return PowerLaw::with_default_floor(k0, k);
    }
    const json& t = h["table"];
    if (!t.is_string()) fail("hazard.table", "expected a csv path string");
    bool extend = false;
    if (h.contains("extend_slopes")) {
        if (!h["extend_slopes"].is_boolean()) fail("hazard.extend_slopes", "expected a boolean");
        extend = h["extend_slopes"].get<bool>();
    }
    std::filesystem::path csv(t.get<std::string>());
    if (csv.is_relative() && !base_dir.empty()) csv = std::filesystem::path(base_dir) / csv;
    try {
        return load_hazard_csv(csv.string(), extend);
    } catch (const std::exception& e) {
        fail("hazard.table", e.what());
    }
}

}  // namespace

ModelFile parse_model_json(const std::string& text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ModelError("model: expected a JSON object");

    ModelFile model;
    model.margin = std::numeric_limits<double>::quiet_NaN();

    const json& frag = member(doc, "model", "fragility");
    const bool has_y = frag.is_object() && frag.contains("y");
    const bool has_z = frag.is_object() && frag.contains("z");
    if (has_y == has_z) {
        fail("fragility", "exactly one of \"y\" or \"z\" must accompany \"x\"");
    }
    model.x = spec_member(frag, "fragility", "x");
    if (has_y) {
        model.y = spec_member(frag, "fragility", "y");
    } else {
        const LognormalSpec z = spec_member(frag, "fragility", "z");
        try {
            model.y = decompose(z, model.x);
        } catch (const std::domain_error& e) {
            fail("fragility.z", e.what());
        }
    }
    if (frag.contains("margin")) model.margin = positive(frag["margin"], "fragility.margin");
    for (auto it = frag.begin(); it != frag.end(); ++it) {
        const std::string& k = it.key();
        if (k != "x" && k != "y" && k != "z" && k != "margin") {
            fail("fragility." + k, "unknown member");
        }
    }

    try {
        model.hazard = parse_hazard(member(doc, "model", "hazard"), base_dir);
    } catch (const std::domain_error& e) {
        fail("hazard", e.what());
    }

    if (doc.contains("analysis")) {
        const json& a = doc["analysis"];
        if (!a.is_object()) fail("analysis", "expected an object");
        if (a.contains("t_D")) {
            const json& ts = a["t_D"];
            if (!ts.is_array() || ts.empty()) fail("analysis.t_D", "expected a non-empty array");
            model.t_ds.clear();
            for (std::size_t i = 0; i < ts.size(); ++i) {
                model.t_ds.push_back(
                    positive(ts[i], "analysis.t_D[" + std::to_string(i) + "]"));
            }
        }
        if (a.contains("quadrature")) {
            const json& quad = a["quadrature"];
            const std::string path = "analysis.quadrature";
            if (!quad.is_object()) fail(path, "expected an object");
            if (quad.contains("u_span")) model.quadrature.u_span = positive(quad["u_span"], path + ".u_span");
            if (quad.contains("n_outer")) {
                model.quadrature.n_outer = static_cast<int>(positive(quad["n_outer"], path + ".n_outer"));
            }
            if (quad.contains("n_inner")) {
                model.quadrature.n_inner = static_cast<int>(positive(quad["n_inner"], path + ".n_inner"));
            }
            if (quad.contains("rel_tol")) model.quadrature.rel_tol = positive(quad["rel_tol"], path + ".rel_tol");
            try {
                model.quadrature.validate();
            } catch (const std::domain_error& e) {
                fail(path, e.what());
            }
        }
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        if (k != "fragility" && k != "hazard" && k != "analysis") fail(k, "unknown section");
    }
    return model;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace ergorisk

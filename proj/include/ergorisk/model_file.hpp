#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ergorisk/hazard.hpp"
#include "ergorisk/probcore.hpp"
#include "ergorisk/quadrature.hpp"

namespace ergorisk {

/// Schema or I/O problem in a model file. The message carries the JSON path
/// of the offending member.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed model document:
///   fragility: {"x": {median, dispersion}, "y": {...}}  or  {"x": ..., "z": ...}
///              (y derived by decomposition); optional "margin"
///   hazard:    exactly one of
///              {"pulse": {eta, median, dispersion}}
///              {"power_law": {k0, k[, im_min]}}
///              {"table": "curve.csv"[, "extend_slopes": bool]}  (path
///              relative to the model file)
///   analysis:  optional {"t_D": [years...], "quadrature": {u_span, n_outer,
///              n_inner, rel_tol}}
struct ModelFile {
    LognormalSpec x;
    LognormalSpec y;
    double margin = 0.0;  // NaN when absent
    HazardModel hazard;
    std::vector<double> t_ds{50.0};
    QuadratureSettings quadrature;
};

ModelFile load_model_file(const std::string& path);
ModelFile parse_model_json(const std::string& text, const std::string& base_dir);

}  // namespace ergorisk

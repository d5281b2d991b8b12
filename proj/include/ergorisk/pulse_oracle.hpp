#pragma once

#include <cstdint>

#include "ergorisk/toymodel.hpp"

namespace ergorisk {

/// Whether the system factor is drawn once per structure (its physical
/// meaning) or redrawn at every pulse (the ensemble treatment).
enum class YMode { non_ergodic, ergodic };

struct PulseSimConfig {
    ToyProblem problem;
    double t_d = 50.0;
    std::int64_t n_structures = 1'000'000;
    std::uint64_t seed = 1;
    YMode y_mode = YMode::non_ergodic;
};

struct SimEstimate {
    double pf_hat = 0.0;
    double std_error = 0.0;  // sqrt(pf(1-pf)/n)
    std::int64_t n = 0;
};

/// Brute-force simulation of the pulse first-passage process: per structure
/// draw the fixed factor (per y_mode), a Poisson pulse count, and per pulse
/// the intensity and the renewed factor; the structure fails if any pulse
/// exceeds its capacity. Bit-for-bit reproducible for a fixed seed and
/// independent of thread count (per-structure substreams, integer
/// reduction).
SimEstimate simulate(const PulseSimConfig& config);

/// simulate with t_d forced to 1 year, estimating the annual failure
/// probability. For rates below ~1e-5 the Monte Carlo error dominates at
/// any affordable n; treat such results as indicative only.
SimEstimate simulate_rate(PulseSimConfig config);

}  // namespace ergorisk

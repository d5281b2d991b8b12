#include "ergorisk/pulse_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergorisk/parallel.hpp"
#include "ergorisk/rng.hpp"

namespace ergorisk {

namespace {

constexpr std::int64_t kBlock = 1 << 16;

// Draw order per structure is fixed: fixed factor (non-ergodic mode), pulse
// count, then per pulse intensity / renewed factor (/ fixed factor in
// ergodic mode). The loop may stop at the first failing pulse; each
// structure owns its substream, so skipped draws affect nothing else.
bool run_structure(const PulseSimConfig& cfg, SplitMix64& rng) {
    const ToyProblem& p = cfg.problem;
    double y = 0.0;
    if (cfg.y_mode == YMode::non_ergodic) y = lognormal_draw(p.y, rng);
    const int pulses = poisson_draw(p.eta * cfg.t_d, rng);
    for (int j = 0; j < pulses; ++j) {
        const double s = lognormal_draw(p.s, rng);
        const double x = lognormal_draw(p.x, rng);
        const double yv = (cfg.y_mode == YMode::ergodic) ? lognormal_draw(p.y, rng) : y;
        if (limit_state(s, x, yv) <= 0.0) return true;
    }
    return false;
}

}  // namespace

SimEstimate simulate(const PulseSimConfig& config) {
    if (config.n_structures < 1) {
        throw std::domain_error("simulate: n_structures must be >= 1");
    }
    if (!(config.t_d > 0.0)) throw std::domain_error("simulate: t_d must be positive");
    if (!(config.problem.eta >= 0.0)) throw std::domain_error("simulate: eta must be >= 0");

    const std::int64_t n = config.n_structures;
    const std::int64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::int64_t> failures(static_cast<std::size_t>(n_blocks), 0);

    detail::parallel_for(n_blocks, [&](std::int64_t b) {
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(n, lo + kBlock);
        std::int64_t count = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            SplitMix64 rng = substream(config.seed, static_cast<std::uint64_t>(i));
            if (run_structure(config, rng)) ++count;
        }
        failures[static_cast<std::size_t>(b)] = count;
    });

    std::int64_t total = 0;
    for (const std::int64_t c : failures) total += c;

    SimEstimate est;
    est.n = n;
    est.pf_hat = static_cast<double>(total) / static_cast<double>(n);
    est.std_error = std::sqrt(est.pf_hat * (1.0 - est.pf_hat) / static_cast<double>(n));
    return est;
}

SimEstimate simulate_rate(PulseSimConfig config) {
    config.t_d = 1.0;
    return simulate(config);
}

}  // namespace ergorisk

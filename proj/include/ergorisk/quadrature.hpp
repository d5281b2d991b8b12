#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergorisk/errors.hpp"

namespace ergorisk {

/// Node counts and tolerances for the risk integrals. Node counts refer to
/// the coarse grid; every integral is also evaluated on the once-refined
/// grid (2n-1 nodes) and the drift between the two is the convergence
/// residual.
struct QuadratureSettings {
    double u_span = 8.0;   // half-width of standard-normal integration range
    int n_outer = 401;     // nodes of the outer (system-factor) integral
    int n_inner = 2001;    // nodes of the inner (intensity) integral
    double rel_tol = 1e-6; // refinement drift that counts as converged

    void validate() const {
        if (!(u_span > 0.0)) throw std::domain_error("QuadratureSettings: u_span must be positive");
        if (n_outer < 3 || n_outer % 2 == 0)
            throw std::domain_error("QuadratureSettings: n_outer must be odd and >= 3");
        if (n_inner < 3 || n_inner % 2 == 0)
            throw std::domain_error("QuadratureSettings: n_inner must be odd and >= 3");
        if (!(rel_tol > 0.0)) throw std::domain_error("QuadratureSettings: rel_tol must be positive");
    }

    /// The same settings with both grids refined once (2n-1 nodes).
    QuadratureSettings refined() const {
        QuadratureSettings q = *this;
        q.n_outer = 2 * n_outer - 1;
        q.n_inner = 2 * n_inner - 1;
        return q;
    }
};

struct RefinedIntegral {
    double value = 0.0;     // fine-grid composite Simpson result
    double residual = 0.0;  // |fine - coarse| relative to |fine|
};

namespace detail {

/// Fine grid for a once-refined composite Simpson rule: 2n-1 equispaced
/// nodes over [a, b], n odd. The coarse rule uses every other node.
inline std::vector<double> simpson_fine_nodes(double a, double b, int n_coarse) {
    const int nf = 2 * n_coarse - 1;
    std::vector<double> t(static_cast<std::size_t>(nf));
    const double h = (b - a) / (nf - 1);
    for (int i = 0; i < nf; ++i) t[static_cast<std::size_t>(i)] = a + h * i;
    t.back() = b;
    return t;
}

inline double simpson_weighted_sum(const std::vector<double>& values, std::size_t stride,
                                   double h) {
    const std::size_t n = (values.size() - 1) / stride + 1;
    double sum = values.front() + values[(n - 1) * stride];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sum += values[i * stride] * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

/// Simpson on the fine grid plus the coarse/fine drift. `values` holds the
/// integrand at simpson_fine_nodes(a, b, n_coarse).
inline RefinedIntegral simpson_refined(const std::vector<double>& values, double a, double b) {
    const std::size_t nf = values.size();
    const double hf = (b - a) / static_cast<double>(nf - 1);
    const double fine = simpson_weighted_sum(values, 1, hf);
    const double coarse = simpson_weighted_sum(values, 2, 2.0 * hf);
    RefinedIntegral out;
    out.value = fine;
    const double scale = std::fabs(fine);
    out.residual = (scale > 1e-300) ? std::fabs(fine - coarse) / scale : std::fabs(fine - coarse);
    return out;
}

inline void require_converged(const RefinedIntegral& r, double rel_tol, const char* context) {
    if (!(r.residual <= rel_tol)) {
        throw NumericError(std::string(context) + ": quadrature refinement did not converge",
                           r.residual, rel_tol);
    }
}

template <typename F>
RefinedIntegral simpson_refined_eval(F&& f, double a, double b, int n_coarse) {
    const std::vector<double> t = simpson_fine_nodes(a, b, n_coarse);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = f(t[i]);
    return simpson_refined(v, a, b);
}

}  // namespace detail
}  // namespace ergorisk

#include "ergorisk/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ergorisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_im(double im, const char* who) {
    if (!(im > 0.0) || !std::isfinite(im)) {
        throw std::domain_error(std::string(who) + ": im must be positive, got " +
                                std::to_string(im));
    }
}

// Index of the log-log segment containing im (right-continuous; the last
// segment also covers the final knot).
std::size_t segment_index(const std::vector<Tabulated::Point>& pts, double im) {
    auto it = std::upper_bound(pts.begin(), pts.end(), im,
                               [](double v, const Tabulated::Point& p) { return v < p.im; });
    std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    if (hi == 0) hi = 1;
    if (hi == pts.size()) hi = pts.size() - 1;
    return hi - 1;  // segment [i, i+1]
}

double table_log_slope(const std::vector<Tabulated::Point>& pts, std::size_t seg) {
    const auto& p0 = pts[seg];
    const auto& p1 = pts[seg + 1];
    return (std::log(p1.H) - std::log(p0.H)) / (std::log(p1.im) - std::log(p0.im));
}

}  // namespace

PulseLognormal::PulseLognormal(double eta_in, LognormalSpec intensity_in)
    : eta(eta_in), intensity(intensity_in) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw std::domain_error("PulseLognormal: eta must be non-negative, got " +
                                std::to_string(eta_in));
    }
}

PowerLaw::PowerLaw(double k0_in, double k_in, double im_min_in)
    : k0(k0_in), k(k_in), im_min(im_min_in) {
    if (!(k0 > 0.0) || !std::isfinite(k0))
        throw std::domain_error("PowerLaw: k0 must be positive, got " + std::to_string(k0_in));
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::domain_error("PowerLaw: k must be positive, got " + std::to_string(k_in));
    if (!(im_min > 0.0) || !std::isfinite(im_min))
        throw std::domain_error("PowerLaw: im_min must be positive, got " +
                                std::to_string(im_min_in));
}

PowerLaw PowerLaw::with_default_floor(double k0, double k) {
    if (!(k0 > 0.0) || !(k > 0.0)) {
        throw std::domain_error("PowerLaw: k0 and k must be positive");
    }
    return PowerLaw(k0, k, std::pow(k0 / 10.0, 1.0 / k));
}

Tabulated make_tabulated(std::vector<Tabulated::Point> points, bool extend_slopes) {
    if (points.size() < 2) {
        throw std::domain_error("Tabulated hazard needs at least two points, got " +
                                std::to_string(points.size()));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!(p.im > 0.0) || !std::isfinite(p.im) || !(p.H > 0.0) || !std::isfinite(p.H)) {
            throw std::domain_error("Tabulated hazard point " + std::to_string(i + 1) +
                                    ": im and H must be positive and finite");
        }
        if (i > 0) {
            if (!(p.im > points[i - 1].im)) {
                throw std::domain_error("Tabulated hazard point " + std::to_string(i + 1) +
                                        ": im must be strictly increasing");
            }
            if (!(p.H < points[i - 1].H)) {
                throw std::domain_error("Tabulated hazard point " + std::to_string(i + 1) +
                                        ": H must be strictly decreasing");
            }
        }
    }
    Tabulated t;
    t.points = std::move(points);
    t.extend_slopes = extend_slopes;
    return t;
}

Tabulated load_hazard_csv(std::istream& in, bool extend_slopes) {
    std::string line;
    int row = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("hazard csv row " + std::to_string(row) + ": " + msg);
    };
    if (!std::getline(in, line)) {
        row = 1;
        fail("missing header, expected \"im,H\"");
    }
    ++row;
    auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    if (strip(line) != "im,H") fail("bad header \"" + strip(line) + "\", expected \"im,H\"");

    std::vector<Tabulated::Point> points;
    while (std::getline(in, line)) {
        ++row;
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos) fail("expected two comma-separated values");
        Tabulated::Point p;
        try {
            std::size_t used = 0;
            p.im = std::stod(s.substr(0, comma), &used);
            if (strip(s.substr(0, comma)).size() != used) throw std::invalid_argument("trailing");
            p.H = std::stod(s.substr(comma + 1), &used);
            if (strip(s.substr(comma + 1)).size() != used) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            fail("could not parse numbers from \"" + s + "\"");
        }
        points.push_back(p);
    }
    try {
        return make_tabulated(std::move(points), extend_slopes);
    } catch (const std::domain_error& e) {
        throw std::runtime_error(std::string("hazard csv: ") + e.what());
    }
}

Tabulated load_hazard_csv(const std::string& path, bool extend_slopes) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("hazard csv: cannot open " + path);
    return load_hazard_csv(in, extend_slopes);
}

double exceedance(const HazardModel& model, double im) {
    require_positive_im(im, "exceedance");
    return std::visit(
        [im](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PulseLognormal>) {
                return m.eta * (1.0 - lognormal_cdf(m.intensity, im));
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return m.k0 * std::pow(std::max(im, m.im_min), -m.k);
            } else {
                const auto& pts = m.points;
                if (im < pts.front().im || im > pts.back().im) {
                    if (!m.extend_slopes) {
                        throw std::domain_error(
                            "exceedance: im " + std::to_string(im) +
                            " is outside the tabulated span [" + std::to_string(pts.front().im) +
                            ", " + std::to_string(pts.back().im) +
                            "]; enable slope extension to extrapolate");
                    }
                    const std::size_t seg = (im < pts.front().im) ? 0 : pts.size() - 2;
                    const double b = table_log_slope(pts, seg);
                    const auto& ref = (im < pts.front().im) ? pts.front() : pts.back();
                    return ref.H * std::exp(b * (std::log(im) - std::log(ref.im)));
                }
                // exact at knots
                auto it = std::lower_bound(
                    pts.begin(), pts.end(), im,
                    [](const Tabulated::Point& p, double v) { return p.im < v; });
                if (it != pts.end() && it->im == im) return it->H;
                const std::size_t seg = segment_index(pts, im);
                const double b = table_log_slope(pts, seg);
                return pts[seg].H * std::exp(b * (std::log(im) - std::log(pts[seg].im)));
            }
        },
        model);
}

double density(const HazardModel& model, double im) {
    require_positive_im(im, "density");
    return std::visit(
        [&model, im](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PulseLognormal>) {
                return m.eta * lognormal_pdf(m.intensity, im);
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                if (im < m.im_min) return 0.0;
                return m.k0 * m.k * std::pow(im, -m.k - 1.0);
            } else {
                const auto& pts = m.points;
                std::size_t seg;
                if (im < pts.front().im || im > pts.back().im) {
                    if (!m.extend_slopes) {
                        throw std::domain_error("density: im " + std::to_string(im) +
                                                " is outside the tabulated span");
                    }
                    seg = (im < pts.front().im) ? 0 : pts.size() - 2;
                } else {
                    seg = segment_index(pts, im);
                }
                const double b = table_log_slope(pts, seg);
                return std::fabs(b) * exceedance(model, im) / im;
            }
        },
        model);
}

LogDomain integration_domain(const HazardModel& model) {
    return std::visit(
        [](const auto& m) -> LogDomain {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PulseLognormal>) {
                return {-kInf, kInf};
            } else if constexpr (std::is_same_v<T, PowerLaw>) {
                return {std::log(m.im_min), kInf};
            } else {
                if (m.extend_slopes) return {-kInf, kInf};
                return {std::log(m.points.front().im), std::log(m.points.back().im)};
            }
        },
        model);
}

}  // namespace ergorisk

#pragma once

// Stability of the one-dimensional PSO recurrence
//   v(t+1) = w v(t) - psi y(t)
//   y(t+1) = w v(t) + (1 - psi) y(t),      y = x - p,
// whose coefficient matrix is G = [[w, -psi], [w, 1 - psi]].
//
// Two verdicts are reported side by side: the closed-form condition
// 0 < w < psi - 1, and the discrete-time spectral-radius test max|lambda| < 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ppso/detail/format.hpp"
#include "ppso/error.hpp"
#include "ppso/swarm.hpp"

namespace ppso {

struct Matrix2 {
    double a = 0.0, b = 0.0;  // first row
    double c = 0.0, d = 0.0;  // second row

    double trace() const noexcept { return a + d; }
    double determinant() const noexcept { return a * d - b * c; }

    bool operator==(const Matrix2&) const = default;
};

struct EigenPair {
    std::complex<double> first;
    std::complex<double> second;
};

inline Matrix2 coefficient_matrix(double omega, double psi) noexcept { return {omega, -psi, omega, 1.0 - psi}; }

/// Roots of lambda^2 - tr lambda + det = 0.
inline EigenPair eigenvalues(const Matrix2& g) {
    const double tr = g.trace();
    const double det = g.determinant();
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        const double im = std::sqrt(-disc) / 2.0;
        return {{tr / 2.0, im}, {tr / 2.0, -im}};
    }
    // larger-magnitude root first, the other from the product to avoid cancellation
    const double root = std::sqrt(disc);
    const double big = tr >= 0.0 ? (tr + root) / 2.0 : (tr - root) / 2.0;
    const double small = big != 0.0 ? det / big : 0.0;
    return {{big, 0.0}, {small, 0.0}};
}

/// Closed-form condition 0 < w < psi - 1.
inline bool paper_stability(double omega, double psi) noexcept { return 0.0 < omega && omega < psi - 1.0; }

struct SpectralVerdict {
    double radius = 0.0;
    bool stable = false;
};

inline SpectralVerdict spectral_radius_stable(double omega, double psi) {
    const EigenPair ev = eigenvalues(coefficient_matrix(omega, psi));
    const double r = std::max(std::abs(ev.first), std::abs(ev.second));
    return {r, r < 1.0};
}

struct StabilityReport {
    double omega = 0.0;
    double psi = 0.0;
    Matrix2 g;
    double trace = 0.0;
    double determinant = 0.0;
    EigenPair eigen;
    bool paper_stable = false;
    double spectral_radius = 0.0;
    bool sr_stable = false;

    bool verdicts_disagree() const noexcept { return paper_stable != sr_stable; }
};

inline StabilityReport analyze(double omega, double psi) {
    StabilityReport r;
    r.omega = omega;
    r.psi = psi;
    r.g = coefficient_matrix(omega, psi);
    r.trace = r.g.trace();
    r.determinant = r.g.determinant();
    r.eigen = eigenvalues(r.g);
    r.paper_stable = paper_stability(omega, psi);
    r.spectral_radius = std::max(std::abs(r.eigen.first), std::abs(r.eigen.second));
    r.sr_stable = r.spectral_radius < 1.0;
    return r;
}

namespace detail {

/// Rows of a numeric CSV with a fixed header line.
inline std::vector<std::vector<double>> read_numeric_csv(std::istream& in, std::string_view header) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) {
        throw FormatError("expected CSV header '" + std::string(header) + "'");
    }
    const auto columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        std::vector<double> row;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            const auto value = parse_double(rest.substr(0, comma));
            if (!value) {
                throw FormatError("CSV line " + std::to_string(line_no) + " has a non-numeric cell");
            }
            row.push_back(*value);
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (row.size() != columns) {
            throw FormatError("CSV line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                              " cells, expected " + std::to_string(columns));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

struct TrajectoryState {
    double v = 0.0;
    double y = 0.0;

    bool operator==(const TrajectoryState&) const = default;
};

struct Trajectory {
    std::vector<TrajectoryState> states;  // states[0] is the initial state
    bool diverged = false;

    void write_csv(std::ostream& out) const {
        out << "t,v,y\n";
        for (std::size_t t = 0; t < states.size(); ++t) {
            out << t << ',' << detail::format_double(states[t].v) << ',' << detail::format_double(states[t].y) << '\n';
        }
    }

    /// The divergence flag is not stored in the CSV.
    static Trajectory read_csv(std::istream& in) {
        Trajectory tr;
        for (const auto& row : detail::read_numeric_csv(in, "t,v,y")) {
            tr.states.push_back({row[1], row[2]});
        }
        return tr;
    }
};

inline constexpr double kDivergenceThreshold = 1e12;

/// Iterate the reduced recurrence; stops early once |v| or |y| exceeds 1e12.
inline Trajectory simulate_trajectory(double omega, double psi, double v0, double y0, std::size_t steps) {
    if (steps == 0) {
        throw InputError("trajectory needs at least one step");
    }
    if (!std::isfinite(v0) || !std::isfinite(y0)) {
        throw InputError("initial state must be finite");
    }
    Trajectory tr;
    tr.states.reserve(steps + 1);
    tr.states.push_back({v0, y0});
    double v = v0;
    double y = y0;
    for (std::size_t t = 0; t < steps; ++t) {
        const double nv = omega * v - psi * y;
        const double ny = omega * v + (1.0 - psi) * y;
        v = nv;
        y = ny;
        tr.states.push_back({v, y});
        if (!(std::abs(v) <= kDivergenceThreshold && std::abs(y) <= kDivergenceThreshold)) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

struct AttractionState {
    double v = 0.0;
    double x = 0.0;
};

/// The unshifted system around attraction point p:
///   v(t+1) = w v - psi x + psi p,   x(t+1) = w v + (1 - psi) x + psi p.
inline std::vector<AttractionState> simulate_attraction(double omega, double psi, double p, double v0, double x0,
                                                        std::size_t steps) {
    std::vector<AttractionState> out;
    out.reserve(steps + 1);
    out.push_back({v0, x0});
    double v = v0;
    double x = x0;
    for (std::size_t t = 0; t < steps; ++t) {
        const double nv = omega * v - psi * x + psi * p;
        const double nx = omega * v + (1.0 - psi) * x + psi * p;
        v = nv;
        x = nx;
        out.push_back({v, x});
    }
    return out;
}

/// Attraction point for given cognitive/social pulls: (psi1 plB + psi2 pgB) / psi.
inline double attraction_point(double psi1, double psi2, double personal_best, double global_best) {
    const double psi = psi1 + psi2;
    if (psi == 0.0) {
        throw InputError("attraction point undefined for psi = 0");
    }
    return (psi1 * personal_best + psi2 * global_best) / psi;
}

struct RegionCell {
    double omega = 0.0;
    double psi = 0.0;
    double trace = 0.0;
    double determinant = 0.0;
    double spectral_radius = 0.0;
    bool paper_stable = false;
    bool sr_stable = false;

    bool operator==(const RegionCell&) const = default;
};

/// Cell-centred grid: omega_count x psi_count cells tiling the rectangle.
inline std::vector<RegionCell> stability_region(double omega_lo, double omega_hi, std::size_t omega_count,
                                                double psi_lo, double psi_hi, std::size_t psi_count) {
    if (omega_count == 0 || psi_count == 0 || !(omega_lo < omega_hi) || !(psi_lo < psi_hi)) {
        throw ConfigError("stability grid needs positive counts and increasing ranges");
    }
    std::vector<RegionCell> cells;
    cells.reserve(omega_count * psi_count);
    const double dw = (omega_hi - omega_lo) / static_cast<double>(omega_count);
    const double dp = (psi_hi - psi_lo) / static_cast<double>(psi_count);
    for (std::size_t i = 0; i < omega_count; ++i) {
        for (std::size_t j = 0; j < psi_count; ++j) {
            const double w = omega_lo + (static_cast<double>(i) + 0.5) * dw;
            const double p = psi_lo + (static_cast<double>(j) + 0.5) * dp;
            const StabilityReport r = analyze(w, p);
            cells.push_back({w, p, r.trace, r.determinant, r.spectral_radius, r.paper_stable, r.sr_stable});
        }
    }
    return cells;
}

inline void write_region_csv(std::ostream& out, const std::vector<RegionCell>& cells) {
    out << "omega,psi,trace,det,spectral_radius,paper_stable,sr_stable,disagree\n";
    for (const auto& c : cells) {
        out << detail::format_double(c.omega) << ',' << detail::format_double(c.psi) << ','
            << detail::format_double(c.trace) << ',' << detail::format_double(c.determinant) << ','
            << detail::format_double(c.spectral_radius) << ',' << int(c.paper_stable) << ',' << int(c.sr_stable)
            << ',' << int(c.paper_stable != c.sr_stable) << '\n';
    }
}

inline std::vector<RegionCell> read_region_csv(std::istream& in) {
    std::vector<RegionCell> cells;
    for (const auto& r : detail::read_numeric_csv(in, "omega,psi,trace,det,spectral_radius,paper_stable,sr_stable,disagree")) {
        cells.push_back({r[0], r[1], r[2], r[3], r[4], r[5] != 0.0, r[6] != 0.0});
    }
    return cells;
}

/// Stability summary for a swarm configuration, analysed at the expected
/// attraction coefficient psi = (c1 + c2) / 2 (r1, r2 uniform on [0, 1]).
struct SwarmStabilitySummary {
    double psi = 0.0;
    double omega_start = 0.0;
    double omega_end = 0.0;
    StabilityReport at_start;
    StabilityReport at_end;
    double paper_stable_fraction = 0.0;  // share of iterations 0..I_max satisfying 0 < w < psi - 1
    double sr_stable_fraction = 0.0;
};

inline SwarmStabilitySummary summarize_swarm_stability(double c1, double c2, const InertiaSchedule& schedule,
                                                       std::size_t max_iterations) {
    SwarmStabilitySummary s;
    s.psi = (c1 + c2) / 2.0;
    const auto omega_at = [&](std::size_t t) {
        return max_iterations == 0 ? schedule.start() : inertia_at(schedule, t, max_iterations);
    };
    s.omega_start = omega_at(0);
    s.omega_end = omega_at(max_iterations);
    s.at_start = analyze(s.omega_start, s.psi);
    s.at_end = analyze(s.omega_end, s.psi);
    std::size_t closed_form = 0;
    std::size_t sr = 0;
    for (std::size_t t = 0; t <= max_iterations; ++t) {
        const StabilityReport r = analyze(omega_at(t), s.psi);
        closed_form += r.paper_stable ? 1 : 0;
        sr += r.sr_stable ? 1 : 0;
    }
    const auto total = static_cast<double>(max_iterations + 1);
    s.paper_stable_fraction = static_cast<double>(closed_form) / total;
    s.sr_stable_fraction = static_cast<double>(sr) / total;
    return s;
}

}  // namespace ppso

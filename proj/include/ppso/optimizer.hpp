#pragma once

// Pieces shared by the PSO and gravitational-search optimizers: bounds,
// convergence traces, results and population initialization.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "ppso/detail/format.hpp"
#include "ppso/error.hpp"
#include "ppso/lowdisc.hpp"
#include "ppso/matrix.hpp"
#include "ppso/network.hpp"
#include "ppso/rng.hpp"

namespace ppso {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t dimension, double lo, double hi) {
        return Bounds{std::vector<double>(dimension, lo), std::vector<double>(dimension, hi)};
    }

    std::size_t size() const noexcept { return lower.size(); }

    void validate() const {
        if (lower.empty()) {
            throw ConfigError("search space has no dimensions");
        }
        check_bounds(lower, upper);
    }

    bool operator==(const Bounds&) const = default;
};

/// One row per recorded iteration: best fitness so far and the inertia in effect.
/// Gravitational search stores G(t) in the `omega` column.
struct TraceRecord {
    std::size_t iteration = 0;
    double best_fitness = 0.0;
    double omega = 0.0;

    bool operator==(const TraceRecord&) const = default;
};

struct ConvergenceTrace {
    std::vector<TraceRecord> records;

    std::size_t size() const noexcept { return records.size(); }

    bool non_increasing() const noexcept {
        for (std::size_t i = 1; i < records.size(); ++i) {
            if (records[i].best_fitness > records[i - 1].best_fitness) {
                return false;
            }
        }
        return true;
    }

    void write_csv(std::ostream& out) const {
        out << "iteration,best_mse,omega\n";
        for (const auto& r : records) {
            out << r.iteration << ',' << detail::format_double(r.best_fitness) << ','
                << detail::format_double(r.omega) << '\n';
        }
    }

    static ConvergenceTrace read_csv(std::istream& in) {
        ConvergenceTrace trace;
        std::string line;
        if (!std::getline(in, line) || detail::trim(line) != "iteration,best_mse,omega") {
            throw FormatError("convergence CSV: missing header");
        }
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (detail::trim(line).empty()) {
                continue;
            }
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                cells.push_back(cell);
            }
            const auto it = cells.size() == 3 ? detail::parse_uint(cells[0]) : std::nullopt;
            const auto fit = cells.size() == 3 ? detail::parse_double(cells[1]) : std::nullopt;
            const auto om = cells.size() == 3 ? detail::parse_double(cells[2]) : std::nullopt;
            if (!it || !fit || !om) {
                throw FormatError("convergence CSV line " + std::to_string(line_no) + " is malformed");
            }
            trace.records.push_back({static_cast<std::size_t>(*it), *fit, *om});
        }
        return trace;
    }

    bool operator==(const ConvergenceTrace&) const = default;
};

struct OptimizationResult {
    ParamVector best_position;
    double best_fitness = 0.0;
    ConvergenceTrace trace;
};

enum class Initializer { Sobol, PseudoRandom };

struct InitialPopulation {
    Matrix positions;
    Matrix velocities;
};

/// Initial positions in [lb, ub) and velocities in [-v_max, v_max).
///
/// Sobol draws positions from dimensions [0, D) and, when velocities are
/// requested, velocities from [D, 2D) of one shifted stream. The stream's
/// index-0 point is skipped so no particle sits on the lower-bound corner.
/// Pseudo-random draws use each particle's own generator. Without velocity
/// initialization every particle starts at rest.
inline InitialPopulation initialize_population(Initializer kind, std::size_t population, const Bounds& bounds,
                                               double v_max, bool init_velocities, std::uint64_t seed,
                                               std::vector<Rng>& particle_rngs) {
    const std::size_t dim = bounds.size();
    InitialPopulation pop{Matrix(population, dim), Matrix(population, dim)};
    const auto place = [&](std::size_t i, std::size_t d, double u) {
        pop.positions(i, d) = bounds.lower[d] + u * (bounds.upper[d] - bounds.lower[d]);
    };
    const auto spin = [&](std::size_t i, std::size_t d, double u) { pop.velocities(i, d) = -v_max + u * 2.0 * v_max; };
    if (kind == Initializer::Sobol) {
        const std::size_t total = init_velocities ? 2 * dim : dim;
        SobolStream stream(total, seed);
        std::vector<double> point(total);
        stream.next(point);  // index 0
        for (std::size_t i = 0; i < population; ++i) {
            stream.next(point);
            for (std::size_t d = 0; d < dim; ++d) {
                place(i, d, point[d]);
                if (init_velocities) {
                    spin(i, d, point[dim + d]);
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < population; ++i) {
            Rng& rng = particle_rngs[i];
            for (std::size_t d = 0; d < dim; ++d) {
                place(i, d, rng.uniform());
            }
            if (init_velocities) {
                for (std::size_t d = 0; d < dim; ++d) {
                    spin(i, d, rng.uniform());
                }
            }
        }
    }
    return pop;
}

namespace detail {

inline double checked_fitness(double value) {
    if (std::isnan(value)) {
        throw NumericError("fitness evaluated to NaN");
    }
    return value;
}

inline std::vector<Rng> make_streams(std::uint64_t seed, std::size_t count) {
    std::vector<Rng> rngs;
    rngs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        rngs.emplace_back(seed, i);
    }
    return rngs;
}

}  // namespace detail

/// Callable scoring one position; lower is better.
template <class F>
concept Objective = std::invocable<F&, std::span<const double>> &&
                    std::convertible_to<std::invoke_result_t<F&, std::span<const double>>, double>;

/// Objective adaptor: MSE of the network decoded from each position.
struct NetworkObjective {
    Topology topology;
    const SampleSet* samples = nullptr;

    double operator()(std::span<const double> position) const { return mse_fitness(position, topology, *samples); }
};

}  // namespace ppso

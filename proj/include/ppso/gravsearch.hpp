#pragma once

// Gravitational search (GSA) and the PSOGSA hybrid.
//
// Agents are ranked by current fitness and given masses
//   m_i = (fit_i - worst) / (best - worst),   M_i = m_i / sum_j m_j
// (uniform when every agent has the same fitness). The Kbest heaviest agents
// pull on every other agent; the acceleration of agent i along d is
//   a_id = sum_{j in Kbest, j != i} rand_ij * G(t) * M_j * (x_jd - x_id) / (R_ij + eps)
// with G(t) = G0 * exp(-alpha * t / I_max) and R_ij the Euclidean distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppso/detail/parallel.hpp"
#include "ppso/error.hpp"
#include "ppso/matrix.hpp"
#include "ppso/network.hpp"
#include "ppso/optimizer.hpp"
#include "ppso/rng.hpp"
#include "ppso/swarm.hpp"

namespace ppso {

inline constexpr double kGsaDistanceEpsilon = 1e-12;

struct GsaConfig {
    std::size_t population = 50;
    std::size_t max_iterations = 500;
    std::uint64_t seed = 1;
    Bounds bounds;
    double g0 = 1.0;
    double alpha = 20.0;
    double kbest_floor = 0.025;  // final fraction of agents that exert force
    Initializer initializer = Initializer::PseudoRandom;
    std::size_t threads = 1;

    static GsaConfig defaults(std::size_t dimension) {
        GsaConfig c;
        c.bounds = Bounds::uniform(dimension, SwarmConfig::kDefaultLower, SwarmConfig::kDefaultUpper);
        return c;
    }

    std::size_t dimension() const noexcept { return bounds.size(); }

    void validate() const {
        if (population == 0) {
            throw ConfigError("population must be at least 1");
        }
        if (!(g0 > 0.0)) {
            throw ConfigError("G0 must be positive");
        }
        if (!(alpha >= 0.0)) {
            throw ConfigError("alpha must be non-negative");
        }
        if (!(kbest_floor > 0.0 && kbest_floor <= 1.0)) {
            throw ConfigError("Kbest floor must lie in (0, 1]");
        }
        bounds.validate();
    }
};

struct PsoGsaConfig {
    GsaConfig gsa;
    double c1 = 1.0;
    double c2 = 1.0;
    InertiaSchedule schedule = InertiaSchedule::linear_decreasing(0.9, 0.5);
    double v_max = 4.0;

    /// Every agent exerts force throughout.
    static PsoGsaConfig defaults(std::size_t dimension) {
        PsoGsaConfig c;
        c.gsa = GsaConfig::defaults(dimension);
        c.gsa.kbest_floor = 1.0;
        c.v_max = SwarmConfig::kDefaultVmaxFraction * (SwarmConfig::kDefaultUpper - SwarmConfig::kDefaultLower);
        return c;
    }

    void validate() const {
        gsa.validate();
        schedule.validate();
        if (c1 < 0.0 || c2 < 0.0) {
            throw ConfigError("acceleration coefficients must be non-negative");
        }
        if (!(v_max > 0.0)) {
            throw ConfigError("v_max must be positive");
        }
    }
};

inline double gravitational_constant(double g0, double alpha, std::size_t t, std::size_t max_iterations) {
    if (max_iterations == 0) {
        return g0;
    }
    return g0 * std::exp(-alpha * static_cast<double>(t) / static_cast<double>(max_iterations));
}

/// Fitness-derived masses (minimization) that sum to 1.
inline std::vector<double> normalized_masses(std::span<const double> fitness) {
    if (fitness.empty()) {
        throw EmptyInputError("no agents to weigh");
    }
    const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    const double best = *lo;
    const double worst = *hi;
    std::vector<double> masses(fitness.size());
    if (!(worst > best)) {
        std::fill(masses.begin(), masses.end(), 1.0 / static_cast<double>(fitness.size()));
        return masses;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        masses[i] = (fitness[i] - worst) / (best - worst);
        total += masses[i];
    }
    for (auto& m : masses) {
        m /= total;
    }
    return masses;
}

/// Number of attracting agents at iteration t; falls linearly from all agents
/// to kbest_floor * population, never below one.
inline std::size_t kbest_count(std::size_t population, std::size_t t, std::size_t max_iterations, double floor) {
    if (max_iterations == 0) {
        return population;
    }
    const double progress = static_cast<double>(t) / static_cast<double>(max_iterations);
    const double fraction = floor + (1.0 - progress) * (1.0 - floor);
    const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(population)));
    return std::clamp<std::size_t>(count, 1, population);
}

struct GsaState {
    Matrix positions;
    Matrix velocities;
    Matrix accelerations;
    std::vector<double> masses;
    std::vector<double> fitness;
    double g = 0.0;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
};

namespace detail {

inline void compute_accelerations(GsaState& s, std::size_t kbest, std::vector<Rng>& rngs, std::size_t threads) {
    const std::size_t n = s.positions.rows();
    const std::size_t dim = s.positions.cols();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.fitness[a] < s.fitness[b]; });
    order.resize(kbest);

    parallel_for(n, threads, [&](std::size_t i) {
        auto acc = s.accelerations.row(i);
        std::fill(acc.begin(), acc.end(), 0.0);
        const auto xi = s.positions.row(i);
        for (std::size_t j : order) {
            if (j == i) {
                continue;
            }
            const auto xj = s.positions.row(j);
            double dist2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = xj[d] - xi[d];
                dist2 += diff * diff;
            }
            const double scale = rngs[i].uniform() * s.g * s.masses[j] / (std::sqrt(dist2) + kGsaDistanceEpsilon);
            for (std::size_t d = 0; d < dim; ++d) {
                acc[d] += scale * (xj[d] - xi[d]);
            }
        }
    });
}

template <class Fitness>
void evaluate_agents(GsaState& s, Fitness& fitness, std::size_t threads) {
    parallel_for(s.positions.rows(), threads, [&](std::size_t i) {
        s.fitness[i] = checked_fitness(fitness(std::span<const double>(s.positions.row(i))));
    });
    for (std::size_t i = 0; i < s.fitness.size(); ++i) {
        if (s.fitness[i] < s.best_fitness) {
            s.best_fitness = s.fitness[i];
            s.best_position.assign(s.positions.row(i).begin(), s.positions.row(i).end());
        }
    }
    if (s.best_position.empty()) {
        s.best_fitness = s.fitness.front();
        s.best_position.assign(s.positions.row(0).begin(), s.positions.row(0).end());
    }
}

inline GsaState initial_gsa_state(const GsaConfig& cfg, std::vector<Rng>& rngs) {
    const std::size_t n = cfg.population;
    const std::size_t dim = cfg.dimension();
    GsaState s;
    // agents start at rest; masses and accelerations start at zero
    s.positions = initialize_population(cfg.initializer, n, cfg.bounds, 1.0, false, cfg.seed, rngs).positions;
    s.velocities = Matrix(n, dim);
    s.accelerations = Matrix(n, dim);
    s.masses.assign(n, 0.0);
    s.fitness.assign(n, 0.0);
    return s;
}

}  // namespace detail

struct NoGsaObserver {
    void operator()(const GsaState&) const noexcept {}
};

/// Gravitational search. The trace's third column carries G(t).
template <Objective Fitness, class Observer = NoGsaObserver>
OptimizationResult run_gsa(const GsaConfig& cfg, Fitness&& fitness, Observer&& observer = {}) {
    cfg.validate();
    const std::size_t n = cfg.population;
    const std::size_t dim = cfg.dimension();
    std::vector<Rng> rngs = detail::make_streams(cfg.seed, n);
    GsaState s = detail::initial_gsa_state(cfg, rngs);

    OptimizationResult result;
    result.trace.records.reserve(cfg.max_iterations + 1);
    for (std::size_t t = 0;; ++t) {
        s.iteration = t;
        detail::evaluate_agents(s, fitness, cfg.threads);
        s.g = gravitational_constant(cfg.g0, cfg.alpha, t, cfg.max_iterations);
        result.trace.records.push_back({t, s.best_fitness, s.g});
        observer(std::as_const(s));
        if (t == cfg.max_iterations) {
            break;
        }
        s.masses = normalized_masses(s.fitness);
        detail::compute_accelerations(s, kbest_count(n, t, cfg.max_iterations, cfg.kbest_floor), rngs, cfg.threads);
        for (std::size_t i = 0; i < n; ++i) {
            auto x = s.positions.row(i);
            auto v = s.velocities.row(i);
            const auto a = s.accelerations.row(i);
            for (std::size_t d = 0; d < dim; ++d) {
                v[d] = rngs[i].uniform() * v[d] + a[d];
                x[d] = std::clamp(x[d] + v[d], cfg.bounds.lower[d], cfg.bounds.upper[d]);
            }
        }
    }
    result.best_position = s.best_position;
    result.best_fitness = s.best_fitness;
    return result;
}

/// PSOGSA: v' = w v + c1 r1 a_gsa + c2 r2 (gbest - x), clamped to v_max.
/// The trace's third column carries the inertia weight.
template <Objective Fitness, class Observer = NoGsaObserver>
OptimizationResult run_psogsa(const PsoGsaConfig& cfg, Fitness&& fitness, Observer&& observer = {}) {
    cfg.validate();
    const GsaConfig& g = cfg.gsa;
    const std::size_t n = g.population;
    const std::size_t dim = g.dimension();
    std::vector<Rng> rngs = detail::make_streams(g.seed, n);
    GsaState s = detail::initial_gsa_state(g, rngs);

    OptimizationResult result;
    result.trace.records.reserve(g.max_iterations + 1);
    for (std::size_t t = 0;; ++t) {
        s.iteration = t;
        detail::evaluate_agents(s, fitness, g.threads);
        s.g = gravitational_constant(g.g0, g.alpha, t, g.max_iterations);
        const double omega = g.max_iterations == 0 ? cfg.schedule.start() : inertia_at(cfg.schedule, t, g.max_iterations);
        result.trace.records.push_back({t, s.best_fitness, omega});
        observer(std::as_const(s));
        if (t == g.max_iterations) {
            break;
        }
        s.masses = normalized_masses(s.fitness);
        detail::compute_accelerations(s, kbest_count(n, t, g.max_iterations, g.kbest_floor), rngs, g.threads);
        const std::vector<double> global_best = s.best_position;
        for (std::size_t i = 0; i < n; ++i) {
            auto x = s.positions.row(i);
            auto v = s.velocities.row(i);
            const auto a = s.accelerations.row(i);
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = rngs[i].uniform();
                const double r2 = rngs[i].uniform();
                const double next = omega * v[d] + cfg.c1 * r1 * a[d] + cfg.c2 * r2 * (global_best[d] - x[d]);
                v[d] = std::clamp(next, -cfg.v_max, cfg.v_max);
                x[d] = std::clamp(x[d] + v[d], g.bounds.lower[d], g.bounds.upper[d]);
            }
        }
    }
    result.best_position = s.best_position;
    result.best_fitness = s.best_fitness;
    return result;
}

inline OptimizationResult run_gsa(const GsaConfig& cfg, const Topology& topo, const SampleSet& train) {
    if (train.empty()) {
        throw EmptyInputError("training set is empty");
    }
    check_length(cfg.dimension(), topo.dimension(), "search space");
    return run_gsa(cfg, NetworkObjective{topo, &train});
}

inline OptimizationResult run_psogsa(const PsoGsaConfig& cfg, const Topology& topo, const SampleSet& train) {
    if (train.empty()) {
        throw EmptyInputError("training set is empty");
    }
    check_length(cfg.gsa.dimension(), topo.dimension(), "search space");
    return run_psogsa(cfg, NetworkObjective{topo, &train});
}

}  // namespace ppso

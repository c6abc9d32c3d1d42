#pragma once

// Particle swarm optimizers: PPSO (Sobol start, tanh-increasing inertia),
// BPSO (linearly decreasing inertia) and SGPSO (extra pull toward a fixed
// geometric center).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppso/detail/parallel.hpp"
#include "ppso/error.hpp"
#include "ppso/network.hpp"
#include "ppso/optimizer.hpp"
#include "ppso/rng.hpp"

namespace ppso {

enum class InertiaKind { TanhIncreasing, LinearDecreasing, Constant };

struct InertiaSchedule {
    InertiaKind kind = InertiaKind::Constant;
    double omega_min = 0.0;
    double omega_max = 0.0;  // the single value for Constant

    static InertiaSchedule tanh_increasing(double lo, double hi) { return {InertiaKind::TanhIncreasing, lo, hi}; }
    static InertiaSchedule linear_decreasing(double hi, double lo) { return {InertiaKind::LinearDecreasing, lo, hi}; }
    static InertiaSchedule constant(double w) { return {InertiaKind::Constant, w, w}; }

    void validate() const {
        if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || omega_min > omega_max) {
            throw ConfigError("inertia schedule needs finite omega_min <= omega_max");
        }
    }

    /// Value at t = 0, defined even when the run has no iterations.
    double start() const noexcept { return kind == InertiaKind::TanhIncreasing ? omega_min : omega_max; }

    bool operator==(const InertiaSchedule&) const = default;
};

inline double inertia_at(const InertiaSchedule& s, std::size_t t, std::size_t max_iterations) {
    s.validate();
    if (s.kind == InertiaKind::Constant) {
        return s.omega_max;
    }
    if (max_iterations == 0) {
        throw ConfigError("time-varying inertia needs max_iterations >= 1");
    }
    if (t > max_iterations) {
        throw InputError("iteration " + std::to_string(t) + " beyond max_iterations");
    }
    const double frac = static_cast<double>(t) / static_cast<double>(max_iterations);
    if (s.kind == InertiaKind::TanhIncreasing) {
        return s.omega_min + std::tanh(static_cast<double>(t) * ((s.omega_max - s.omega_min) /
                                                                 static_cast<double>(max_iterations)));
    }
    return s.omega_max - (s.omega_max - s.omega_min) * frac;
}

enum class PsoVariant { PPSO, BPSO, SGPSO };

/// Whether r1, r2 (r3) are drawn per dimension or once per particle per step.
enum class DrawMode { PerDimension, PerParticle };

struct SwarmConfig {
    PsoVariant algorithm = PsoVariant::PPSO;
    std::size_t population = 50;
    std::size_t max_iterations = 500;
    double c1 = 1.6;
    double c2 = 1.7;
    double c3 = 0.0;
    double geometric_center = 0.0;
    InertiaSchedule schedule = InertiaSchedule::tanh_increasing(0.4, 0.9);
    Bounds bounds;
    double v_max = 4.0;
    std::uint64_t seed = 1;
    Initializer initializer = Initializer::Sobol;
    bool init_velocities = true;
    DrawMode draws = DrawMode::PerDimension;
    std::size_t threads = 1;

    static constexpr double kDefaultLower = -10.0;
    static constexpr double kDefaultUpper = 10.0;
    static constexpr double kDefaultVmaxFraction = 0.2;

    static SwarmConfig ppso(std::size_t dimension) {
        SwarmConfig c;
        c.bounds = Bounds::uniform(dimension, kDefaultLower, kDefaultUpper);
        c.v_max = kDefaultVmaxFraction * (kDefaultUpper - kDefaultLower);
        return c;
    }

    static SwarmConfig bpso(std::size_t dimension) {
        SwarmConfig c = ppso(dimension);
        c.algorithm = PsoVariant::BPSO;
        c.c1 = 1.5;
        c.c2 = 1.5;
        c.schedule = InertiaSchedule::linear_decreasing(0.9, 0.3);
        c.initializer = Initializer::PseudoRandom;
        return c;
    }

    static SwarmConfig sgpso(std::size_t dimension) {
        SwarmConfig c = bpso(dimension);
        c.algorithm = PsoVariant::SGPSO;
        c.c3 = 0.5;
        c.geometric_center = 100.0;
        return c;
    }

    std::size_t dimension() const noexcept { return bounds.size(); }

    void validate() const {
        if (population == 0) {
            throw ConfigError("population must be at least 1");
        }
        if (c1 < 0.0 || c2 < 0.0 || c3 < 0.0) {
            throw ConfigError("acceleration coefficients must be non-negative");
        }
        if (!(v_max > 0.0)) {
            throw ConfigError("v_max must be positive");
        }
        schedule.validate();
        bounds.validate();
    }
};

struct Draw {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = std::numeric_limits<double>::infinity();
    double fitness = std::numeric_limits<double>::infinity();
};

struct SwarmState {
    std::vector<Particle> particles;
    std::vector<double> global_best;
    double global_best_fitness = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
};

namespace detail {

template <class DrawAt>
void velocity_kernel(std::span<double> v, std::span<const double> x, std::span<const double> personal_best,
                     std::span<const double> global_best, double omega, const SwarmConfig& cfg, DrawAt&& draw_at) {
    const bool centered = cfg.algorithm == PsoVariant::SGPSO;
    for (std::size_t d = 0; d < v.size(); ++d) {
        const Draw r = draw_at(d);
        double next = omega * v[d] + cfg.c1 * r.r1 * (personal_best[d] - x[d]) + cfg.c2 * r.r2 * (global_best[d] - x[d]);
        if (centered) {
            next += cfg.c3 * r.r3 * (cfg.geometric_center - x[d]);
        }
        v[d] = std::clamp(next, -cfg.v_max, cfg.v_max);
    }
}

inline void position_kernel(std::span<double> x, std::span<const double> v, std::span<const double> lb,
                            std::span<const double> ub) noexcept {
    for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] = std::clamp(x[d] + v[d], lb[d], ub[d]);
    }
}

}  // namespace detail

/// New velocity per the PSO rule, clamped to [-v_max, v_max]. `draws` holds
/// one entry per dimension, or a single entry shared by every dimension.
inline std::vector<double> velocity_update(const Particle& particle, std::span<const double> global_best,
                                           double omega, const SwarmConfig& cfg, std::span<const Draw> draws) {
    const std::size_t dim = particle.position.size();
    check_length(particle.velocity.size(), dim, "velocity");
    check_length(particle.best_position.size(), dim, "personal best");
    check_length(global_best.size(), dim, "global best");
    if (draws.size() != 1) {
        check_length(draws.size(), dim, "random draws");
    }
    std::vector<double> v = particle.velocity;
    detail::velocity_kernel(v, particle.position, particle.best_position, global_best, omega, cfg,
                            [&](std::size_t d) { return draws.size() == 1 ? draws[0] : draws[d]; });
    return v;
}

/// x + v, clamped componentwise into [lb, ub].
inline std::vector<double> position_update(std::span<const double> x, std::span<const double> v,
                                           std::span<const double> lb, std::span<const double> ub) {
    check_length(v.size(), x.size(), "velocity");
    check_length(lb.size(), x.size(), "lower bounds");
    check_length(ub.size(), x.size(), "upper bounds");
    std::vector<double> out(x.begin(), x.end());
    detail::position_kernel(out, v, lb, ub);
    return out;
}

struct NoObserver {
    void operator()(const SwarmState&) const noexcept {}
};

/// Full PSO training loop. `fitness` maps a position span to a value to minimize.
/// `observer` sees the swarm after initialization and after every iteration.
template <Objective Fitness, class Observer = NoObserver>
OptimizationResult run_pso(const SwarmConfig& cfg, Fitness&& fitness, Observer&& observer = {}) {
    cfg.validate();
    const std::size_t dim = cfg.dimension();
    const std::size_t n = cfg.population;
    const bool centered = cfg.algorithm == PsoVariant::SGPSO;

    std::vector<Rng> rngs = detail::make_streams(cfg.seed, n);
    InitialPopulation init =
        initialize_population(cfg.initializer, n, cfg.bounds, cfg.v_max, cfg.init_velocities, cfg.seed, rngs);

    SwarmState state;
    state.particles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Particle& p = state.particles[i];
        p.position.assign(init.positions.row(i).begin(), init.positions.row(i).end());
        p.velocity.assign(init.velocities.row(i).begin(), init.velocities.row(i).end());
        for (auto& v : p.velocity) {
            v = std::clamp(v, -cfg.v_max, cfg.v_max);
        }
    }

    const auto evaluate = [&] {
        detail::parallel_for(n, cfg.threads, [&](std::size_t i) {
            Particle& p = state.particles[i];
            p.fitness = detail::checked_fitness(fitness(std::span<const double>(p.position)));
        });
    };
    const auto update_bests = [&] {
        for (auto& p : state.particles) {
            if (p.fitness < p.best_fitness) {
                p.best_fitness = p.fitness;
                p.best_position = p.position;
            }
        }
        for (const auto& p : state.particles) {
            if (p.best_fitness < state.global_best_fitness) {
                state.global_best_fitness = p.best_fitness;
                state.global_best = p.best_position;
            }
        }
    };

    OptimizationResult result;
    result.trace.records.reserve(cfg.max_iterations + 1);

    evaluate();
    update_bests();
    if (state.global_best.empty()) {
        // every fitness was +inf; keep the first particle as incumbent
        state.global_best = state.particles.front().position;
        state.global_best_fitness = state.particles.front().fitness;
        for (auto& p : state.particles) {
            p.best_position = p.position;
            p.best_fitness = p.fitness;
        }
    }
    result.trace.records.push_back({0, state.global_best_fitness,
                                    cfg.max_iterations == 0 ? cfg.schedule.start()
                                                            : inertia_at(cfg.schedule, 0, cfg.max_iterations)});
    observer(std::as_const(state));

    std::vector<Draw> draws(dim);
    for (std::size_t t = 0; t < cfg.max_iterations; ++t) {
        const double omega = inertia_at(cfg.schedule, t, cfg.max_iterations);
        const std::vector<double> global_best = state.global_best;
        for (std::size_t i = 0; i < n; ++i) {
            Particle& p = state.particles[i];
            Rng& rng = rngs[i];
            if (cfg.draws == DrawMode::PerDimension) {
                for (auto& r : draws) {
                    r.r1 = rng.uniform();
                    r.r2 = rng.uniform();
                    r.r3 = centered ? rng.uniform() : 0.0;
                }
                detail::velocity_kernel(p.velocity, p.position, p.best_position, global_best, omega, cfg,
                                        [&](std::size_t d) { return draws[d]; });
            } else {
                Draw r{rng.uniform(), rng.uniform(), 0.0};
                r.r3 = centered ? rng.uniform() : 0.0;
                detail::velocity_kernel(p.velocity, p.position, p.best_position, global_best, omega, cfg,
                                        [&](std::size_t) { return r; });
            }
            detail::position_kernel(p.position, p.velocity, cfg.bounds.lower, cfg.bounds.upper);
        }
        evaluate();
        update_bests();
        state.iteration = t + 1;
        result.trace.records.push_back(
            {t + 1, state.global_best_fitness, inertia_at(cfg.schedule, t + 1, cfg.max_iterations)});
        observer(std::as_const(state));
    }

    result.best_position = state.global_best;
    result.best_fitness = state.global_best_fitness;
    return result;
}

/// Train a network: fitness is the training-set MSE of the decoded particle.
inline OptimizationResult run_pso(const SwarmConfig& cfg, const Topology& topo, const SampleSet& train) {
    if (train.empty()) {
        throw EmptyInputError("training set is empty");
    }
    check_length(cfg.dimension(), topo.dimension(), "search space");
    return run_pso(cfg, NetworkObjective{topo, &train});
}

}  // namespace ppso

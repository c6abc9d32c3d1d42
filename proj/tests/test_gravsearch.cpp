#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ppso/gravsearch.hpp"

using namespace ppso;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s;
}

GsaConfig small_gsa(std::size_t dim) {
    GsaConfig c = GsaConfig::defaults(dim);
    c.population = 15;
    c.max_iterations = 40;
    return c;
}

}  // namespace

TEST(Gsa, GravitationalConstantDecays) {
    EXPECT_DOUBLE_EQ(gravitational_constant(1.0, 20.0, 0, 500), 1.0);
    EXPECT_NEAR(gravitational_constant(1.0, 20.0, 500, 500), std::exp(-20.0), 1e-18);
    EXPECT_NEAR(gravitational_constant(100.0, 20.0, 125, 500), 100.0 * std::exp(-5.0), 1e-12);
}

TEST(Gsa, MassesFromFitness) {
    // m = (fit - worst) / (best - worst) = (1, 0.5, 0); normalized by 1.5
    const auto m = normalized_masses(std::vector<double>{1.0, 2.0, 3.0});
    EXPECT_NEAR(m[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m[1], 1.0 / 3.0, 1e-15);
    EXPECT_EQ(m[2], 0.0);
    const auto flat = normalized_masses(std::vector<double>{4.0, 4.0, 4.0, 4.0});
    for (double v : flat) {
        EXPECT_EQ(v, 0.25);
    }
    const auto r = normalized_masses(std::vector<double>{0.3, 0.9, 0.1, 0.5});
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-15);
    EXPECT_GT(r[2], r[0]);
    EXPECT_THROW(normalized_masses(std::vector<double>{}), EmptyInputError);
}

TEST(Gsa, KbestShrinksToFloor) {
    EXPECT_EQ(kbest_count(50, 0, 500, 0.025), 50u);
    EXPECT_EQ(kbest_count(50, 250, 500, 0.025), 26u);  // round(50 * 0.5125)
    EXPECT_EQ(kbest_count(50, 500, 500, 0.025), 1u);
    EXPECT_EQ(kbest_count(50, 500, 500, 1.0), 50u);
    for (std::size_t t = 1; t <= 500; ++t) {
        EXPECT_LE(kbest_count(50, t, 500, 0.025), kbest_count(50, t - 1, 500, 0.025));
    }
}

TEST(Gsa, AccelerationPointsTowardAttractor) {
    GsaState s;
    s.positions = Matrix(2, 3);
    const double x0[] = {0.0, 0.0, 0.0};
    const double x1[] = {3.0, -4.0, 0.0};
    std::copy(x0, x0 + 3, s.positions.row(0).begin());
    std::copy(x1, x1 + 3, s.positions.row(1).begin());
    s.accelerations = Matrix(2, 3);
    s.fitness = {2.0, 1.0};
    s.masses = normalized_masses(s.fitness);  // agent 1 carries all the mass
    s.g = 2.0;
    auto rngs = detail::make_streams(1, 2);
    auto replay = detail::make_streams(1, 2);
    detail::compute_accelerations(s, 2, rngs, 1);
    // a_0 = rand * G * M_1 * (x1 - x0) / (|x1 - x0| + eps); |x1 - x0| = 5
    const double r = replay[0].uniform();
    for (std::size_t d = 0; d < 3; ++d) {
        EXPECT_NEAR(s.accelerations(0, d), r * 2.0 * 1.0 * x1[d] / (5.0 + kGsaDistanceEpsilon), 1e-12);
        EXPECT_EQ(s.accelerations(1, d), 0.0);  // agent 0 has zero mass
    }
}

TEST(Gsa, AccelerationBoundedByMassAndG) {
    GsaState s;
    auto init = detail::make_streams(3, 10);
    s.positions = Matrix(10, 4);
    s.fitness.resize(10);
    for (std::size_t i = 0; i < 10; ++i) {
        for (auto& x : s.positions.row(i)) {
            x = 10.0 * init[i].uniform() - 5.0;
        }
        s.fitness[i] = sphere(s.positions.row(i));
    }
    s.accelerations = Matrix(10, 4);
    s.masses = normalized_masses(s.fitness);
    s.g = 0.7;
    auto rngs = detail::make_streams(3, 10);
    detail::compute_accelerations(s, 10, rngs, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        double norm = 0.0;
        for (double a : s.accelerations.row(i)) {
            norm += a * a;
        }
        EXPECT_LE(std::sqrt(norm), 0.7 * (1.0 + 1e-12));
    }
}

TEST(Gsa, TraceCarriesGravityAndNeverIncreases) {
    const GsaConfig cfg = small_gsa(4);
    const auto r = run_gsa(cfg, sphere);
    ASSERT_EQ(r.trace.records.size(), cfg.max_iterations + 1);
    EXPECT_TRUE(r.trace.non_increasing());
    for (const auto& rec : r.trace.records) {
        EXPECT_DOUBLE_EQ(rec.omega, gravitational_constant(1.0, 20.0, rec.iteration, cfg.max_iterations));
    }
    EXPECT_EQ(r.best_fitness, sphere(r.best_position));
}

TEST(Gsa, DeterministicAcrossThreads) {
    GsaConfig cfg = small_gsa(3);
    const auto a = run_gsa(cfg, sphere);
    cfg.threads = 4;
    const auto b = run_gsa(cfg, sphere);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.best_position, b.best_position);
    cfg.seed = 8;
    EXPECT_FALSE(run_gsa(cfg, sphere).trace == a.trace);
}

TEST(Gsa, AgentsStayInBounds) {
    GsaConfig cfg = small_gsa(2);
    cfg.g0 = 1000.0;
    bool ok = true;
    run_gsa(cfg, sphere, [&](const GsaState& s) {
        for (std::size_t i = 0; i < s.positions.rows(); ++i) {
            for (double x : s.positions.row(i)) {
                ok = ok && x >= -10.0 && x <= 10.0;
            }
        }
    });
    EXPECT_TRUE(ok);
}

TEST(Gsa, RejectsBadConfig) {
    GsaConfig cfg = small_gsa(2);
    cfg.g0 = 0.0;
    EXPECT_THROW(run_gsa(cfg, sphere), ConfigError);
    cfg = small_gsa(2);
    cfg.kbest_floor = 0.0;
    EXPECT_THROW(run_gsa(cfg, sphere), ConfigError);
    cfg = small_gsa(2);
    cfg.population = 0;
    EXPECT_THROW(run_gsa(cfg, sphere), ConfigError);
}

TEST(PsoGsa, DefaultsAndTrace) {
    PsoGsaConfig cfg = PsoGsaConfig::defaults(3);
    EXPECT_EQ(cfg.c1, 1.0);
    EXPECT_EQ(cfg.c2, 1.0);
    EXPECT_EQ(cfg.gsa.g0, 1.0);
    EXPECT_EQ(cfg.schedule, InertiaSchedule::linear_decreasing(0.9, 0.5));
    cfg.gsa.population = 15;
    cfg.gsa.max_iterations = 40;
    const auto r = run_psogsa(cfg, sphere);
    ASSERT_EQ(r.trace.records.size(), 41u);
    EXPECT_TRUE(r.trace.non_increasing());
    EXPECT_DOUBLE_EQ(r.trace.records.front().omega, 0.9);
    EXPECT_DOUBLE_EQ(r.trace.records.back().omega, 0.5);
    EXPECT_EQ(run_psogsa(cfg, sphere).trace, r.trace);
}

TEST(PsoGsa, VelocityClamped) {
    PsoGsaConfig cfg = PsoGsaConfig::defaults(3);
    cfg.gsa.population = 10;
    cfg.gsa.max_iterations = 20;
    cfg.v_max = 0.5;
    bool ok = true;
    run_psogsa(cfg, sphere, [&](const GsaState& s) {
        for (std::size_t i = 0; i < s.velocities.rows(); ++i) {
            for (double v : s.velocities.row(i)) {
                ok = ok && std::abs(v) <= 0.5;
            }
        }
    });
    EXPECT_TRUE(ok);
}

// with G0 = 1 on a +-10 box the swarm collapses before reaching the optimum,
// so the solve check uses a stronger field
TEST(Gsa, SolvesLowDimensionalSphereWithStrongField) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GsaConfig cfg = GsaConfig::defaults(5);
        cfg.g0 = 100.0;
        cfg.seed = seed;
        EXPECT_LT(run_gsa(cfg, sphere).best_fitness, 1e-2) << "seed " << seed;
    }
}

TEST(Gsa, DefaultFieldStillImproves) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GsaConfig cfg = GsaConfig::defaults(5);
        cfg.seed = seed;
        double first = 0.0;
        const auto r = run_gsa(cfg, sphere, [&](const GsaState& s) {
            if (s.iteration == 0) {
                first = s.best_fitness;
            }
        });
        EXPECT_LT(r.best_fitness, first) << "seed " << seed;
    }
}

TEST(PsoGsa, SolvesLowDimensionalSphere) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PsoGsaConfig cfg = PsoGsaConfig::defaults(5);
        cfg.gsa.seed = seed;
        EXPECT_LT(run_psogsa(cfg, sphere).best_fitness, 1e-2) << "seed " << seed;
    }
}

// Minimize the 30-dimensional sphere function with PPSO and GSA.

#include <cstdio>
#include <span>

#include "ppso/gravsearch.hpp"
#include "ppso/swarm.hpp"

int main() {
    const auto sphere = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) {
            s += v * v;
        }
        return s;
    };

    ppso::SwarmConfig pso = ppso::SwarmConfig::ppso(30);
    pso.seed = 7;
    const auto a = ppso::run_pso(pso, sphere, [](const ppso::SwarmState& s) {
        if (s.iteration % 100 == 0) {
            std::printf("  iter %3zu  best %.3e\n", s.iteration, s.global_best_fitness);
        }
    });
    std::printf("PPSO: %.3e after %zu iterations\n", a.best_fitness, a.trace.records.size() - 1);

    ppso::GsaConfig gsa = ppso::GsaConfig::defaults(30);
    gsa.seed = 7;
    const auto b = ppso::run_gsa(gsa, sphere);
    std::printf("GSA:  %.3e\n", b.best_fitness);
}

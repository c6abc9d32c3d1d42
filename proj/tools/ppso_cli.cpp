// Command-line front end: train, compare, stability, sobol.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric/runtime failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppso/lowdisc.hpp"
#include "ppso/runner.hpp"
#include "ppso/stability.hpp"

namespace {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ppso::ConfigError*>(&e)) {
        return 2;
    }
    if (dynamic_cast<const ppso::DataError*>(&e) || dynamic_cast<const ppso::IoError*>(&e) ||
        dynamic_cast<const ppso::InputError*>(&e)) {
        return 3;
    }
    return 4;
}

struct RunFlags {
    std::string config_file;
    std::optional<std::string> dataset, pop, iters, hidden, seeds, split, threads;
    std::vector<std::string> set;
    std::string out;
    bool force = false;
    bool print_config = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config_file, "Flat key = value config file");
        cmd.add_option("--dataset", dataset, "CSV dataset path");
        cmd.add_option("--pop", pop, "Population size");
        cmd.add_option("--iters", iters, "Iterations per run");
        cmd.add_option("--hidden", hidden, "Hidden units (auto = 2p+1)");
        cmd.add_option("--seeds", seeds, "Seed list, e.g. 1-10 or 3,5,8");
        cmd.add_option("--split", split, "Training fraction");
        cmd.add_option("--threads", threads, "Seeds trained concurrently");
        cmd.add_option("--set", set, "Extra key=value override (repeatable)");
        cmd.add_option("--out", out, "Output directory");
        cmd.add_flag("--force", force, "Overwrite existing output files");
        cmd.add_flag("--print-config", print_config, "Print the effective config and exit");
    }

    /// File entries first, then flags, so flags win.
    ppso::ConfigEntries entries(const std::optional<std::string>& algorithm) const {
        ppso::ConfigEntries e;
        if (!config_file.empty()) {
            e = ppso::load_config_entries(config_file);
        }
        const auto add = [&](const char* key, const std::optional<std::string>& v) {
            if (v) {
                e.emplace_back(key, *v);
            }
        };
        add("algorithm", algorithm);
        add("dataset", dataset);
        add("population", pop);
        add("iterations", iters);
        add("hidden", hidden);
        add("seeds", seeds);
        add("split", split);
        add("threads", threads);
        for (const auto& kv : set) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw ppso::ConfigError("--set expects key=value, got '" + kv + "'");
            }
            e.emplace_back(std::string(ppso::detail::trim(kv.substr(0, eq))), kv.substr(eq + 1));
        }
        return e;
    }
};

int cmd_train(const RunFlags& flags, const std::optional<std::string>& algorithm) {
    const ppso::ExperimentConfig cfg = ppso::make_config(flags.entries(algorithm));
    if (flags.print_config) {
        std::cout << ppso::to_text(cfg);
        return 0;
    }
    const ppso::RunReport report = ppso::run_experiment(cfg);
    std::cout << ppso::summary_text(report);
    if (!flags.out.empty()) {
        for (const auto& p : ppso::emit_outputs(report, flags.out, flags.force)) {
            std::cout << "wrote " << p.string() << "\n";
        }
    }
    return 0;
}

int cmd_compare(const RunFlags& flags, const std::vector<std::string>& algorithms) {
    std::vector<ppso::ExperimentConfig> configs;
    for (const auto& name : algorithms) {
        configs.push_back(ppso::make_config(flags.entries(name)));
    }
    if (flags.print_config) {
        for (const auto& c : configs) {
            std::cout << ppso::to_text(c) << "\n";
        }
        return 0;
    }
    const ppso::Comparison cmp = ppso::compare_algorithms(configs);
    std::cout << "dataset: " << cmp.dataset_name << "\n";
    cmp.write_csv(std::cout);
    if (!flags.out.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir(flags.out);
        for (const auto& rep : cmp.reports) {
            ppso::emit_outputs(rep, dir / std::string(ppso::to_string(rep.config.algorithm)), flags.force);
        }
        const fs::path table = dir / "comparison.csv";
        if (fs::exists(table) && !flags.force) {
            throw ppso::IoError(table.string() + " already exists (use --force to overwrite)");
        }
        std::ofstream out(table, std::ios::binary | std::ios::trunc);
        cmp.write_csv(out);
        if (!out) {
            throw ppso::IoError("failed writing " + table.string());
        }
        std::cout << "wrote " << dir.string() << "\n";
    }
    return 0;
}

std::ofstream open_output(const std::string& path, bool force) {
    if (std::filesystem::exists(path) && !force) {
        throw ppso::IoError(path + " already exists (use --force to overwrite)");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ppso::IoError("cannot write " + path);
    }
    return out;
}

struct StabilityFlags {
    std::optional<double> omega, psi;
    std::string region, trajectory;
    std::size_t omega_cells = 100, psi_cells = 100, steps = 200;
    double v0 = 1.0, y0 = 1.0;
    bool force = false;
};

int cmd_stability(const StabilityFlags& f) {
    if (!f.region.empty()) {
        auto out = open_output(f.region, f.force);
        ppso::write_region_csv(out, ppso::stability_region(-0.5, 1.5, f.omega_cells, 0.0, 4.0, f.psi_cells));
        std::cout << "wrote " << f.region << "\n";
    }
    if (f.omega.has_value() != f.psi.has_value()) {
        throw ppso::ConfigError("--omega and --psi must be given together");
    }
    if (f.omega) {
        const ppso::StabilityReport r = ppso::analyze(*f.omega, *f.psi);
        const auto fmt = ppso::detail::format_double;
        std::cout << "omega " << fmt(r.omega) << ", psi " << fmt(r.psi) << "\n"
                  << "trace " << fmt(r.trace) << ", det " << fmt(r.determinant) << "\n"
                  << "eigenvalues " << fmt(r.eigen.first.real()) << (r.eigen.first.imag() < 0 ? "" : "+")
                  << fmt(r.eigen.first.imag()) << "i, " << fmt(r.eigen.second.real())
                  << (r.eigen.second.imag() < 0 ? "" : "+") << fmt(r.eigen.second.imag()) << "i\n"
                  << "spectral radius " << fmt(r.spectral_radius) << " -> " << (r.sr_stable ? "stable" : "not stable")
                  << "\n0 < omega < psi - 1 -> " << (r.paper_stable ? "holds" : "fails") << "\n";
        if (!f.trajectory.empty()) {
            auto out = open_output(f.trajectory, f.force);
            ppso::simulate_trajectory(*f.omega, *f.psi, f.v0, f.y0, f.steps).write_csv(out);
            std::cout << "wrote " << f.trajectory << "\n";
        }
    } else if (!f.trajectory.empty()) {
        throw ppso::ConfigError("--trajectory needs --omega and --psi");
    } else if (f.region.empty()) {
        throw ppso::ConfigError("nothing to do: give --region and/or --omega/--psi");
    }
    return 0;
}

int cmd_sobol(std::size_t dim, std::size_t count, std::uint64_t seed, const std::string& out_path, bool force) {
    const ppso::Matrix pts = ppso::sobol_points(dim, count, seed);
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_output(out_path, force);
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    for (std::size_t d = 0; d < dim; ++d) {
        out << (d ? "," : "") << "x" << d;
    }
    out << "\n";
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            out << (d ? "," : "") << ppso::detail::format_double(pts(i, d));
        }
        out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train neural-network classifiers with swarm optimizers"};
    app.require_subcommand(1);

    RunFlags train_flags;
    std::optional<std::string> algorithm;
    auto* train = app.add_subcommand("train", "Train and evaluate one algorithm over a list of seeds");
    train_flags.attach(*train);
    train->add_option("--algorithm", algorithm, "PPSO, BPSO, SGPSO, GSA or PSOGSA");

    RunFlags compare_flags;
    std::vector<std::string> algorithms = {"BPSO", "SGPSO", "GSA", "PSOGSA", "PPSO"};
    auto* compare = app.add_subcommand("compare", "Run several algorithms on one dataset and tabulate the best runs");
    compare_flags.attach(*compare);
    compare->add_option("--algorithms", algorithms, "Algorithms to compare")->delimiter(',');

    StabilityFlags stab;
    auto* stability = app.add_subcommand("stability", "Stability region grid and single-point analysis");
    stability->add_option("--omega", stab.omega, "Inertia weight");
    stability->add_option("--psi", stab.psi, "Attraction coefficient");
    stability->add_option("--region", stab.region, "Write the (omega, psi) region grid CSV here");
    stability->add_option("--omega-cells", stab.omega_cells, "Grid cells along omega")->check(CLI::PositiveNumber);
    stability->add_option("--psi-cells", stab.psi_cells, "Grid cells along psi")->check(CLI::PositiveNumber);
    stability->add_option("--trajectory", stab.trajectory, "Write the t,v,y trajectory CSV here");
    stability->add_option("--steps", stab.steps, "Trajectory steps");
    stability->add_option("--v0", stab.v0, "Initial velocity");
    stability->add_option("--y0", stab.y0, "Initial offset from the attraction point");
    stability->add_flag("--force", stab.force, "Overwrite existing files");

    std::size_t dim = 2, count = 16;
    std::uint64_t seed = 0;
    std::string sobol_out;
    bool sobol_force = false;
    auto* sobol = app.add_subcommand("sobol", "Print Sobol points in the unit cube");
    sobol->add_option("--dim", dim, "Dimension");
    sobol->add_option("--count", count, "Number of points");
    sobol->add_option("--seed", seed, "Random shift seed (0 = unshifted)");
    sobol->add_option("--out", sobol_out, "Write CSV here instead of stdout");
    sobol->add_flag("--force", sobol_force, "Overwrite an existing file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (train->parsed()) {
            return cmd_train(train_flags, algorithm);
        }
        if (compare->parsed()) {
            return cmd_compare(compare_flags, algorithms);
        }
        if (stability->parsed()) {
            return cmd_stability(stab);
        }
        return cmd_sobol(dim, count, seed, sobol_out, sobol_force);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

#pragma once

// Experiment orchestration: config parsing, per-seed training and
// evaluation, algorithm comparison and report files.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ppso/datapipe.hpp"
#include "ppso/detail/format.hpp"
#include "ppso/detail/parallel.hpp"
#include "ppso/error.hpp"
#include "ppso/evaluate.hpp"
#include "ppso/gravsearch.hpp"
#include "ppso/network.hpp"
#include "ppso/stability.hpp"
#include "ppso/swarm.hpp"

namespace ppso {

enum class Algorithm { PPSO, BPSO, SGPSO, GSA, PSOGSA };

inline std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::PPSO: return "PPSO";
        case Algorithm::BPSO: return "BPSO";
        case Algorithm::SGPSO: return "SGPSO";
        case Algorithm::GSA: return "GSA";
        case Algorithm::PSOGSA: return "PSOGSA";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (Algorithm a : {Algorithm::PPSO, Algorithm::BPSO, Algorithm::SGPSO, Algorithm::GSA, Algorithm::PSOGSA}) {
        if (upper == to_string(a)) {
            return a;
        }
    }
    throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {Algorithm::BPSO, Algorithm::SGPSO, Algorithm::GSA,
                                                            Algorithm::PSOGSA, Algorithm::PPSO};

struct ExperimentConfig {
    std::string dataset;
    LabelColumn label_column;  // nullopt = last column
    Algorithm algorithm = Algorithm::PPSO;
    std::size_t population = 50;
    std::size_t iterations = 500;
    std::size_t hidden = 0;  // 0 = 2p + 1
    double split = 0.8;
    bool stratified = true;
    bool normalize_on_train = false;  // false: statistics over the whole dataset
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double lower = SwarmConfig::kDefaultLower;
    double upper = SwarmConfig::kDefaultUpper;
    double vmax_fraction = SwarmConfig::kDefaultVmaxFraction;
    double c1 = 1.6;
    double c2 = 1.7;
    double c3 = 0.0;
    double center = 0.0;
    double omega_min = 0.4;
    double omega_max = 0.9;
    Initializer initializer = Initializer::Sobol;
    bool init_velocities = true;
    DrawMode draws = DrawMode::PerDimension;
    double g0 = 1.0;
    double alpha = 20.0;
    double kbest_floor = 0.025;
    std::size_t threads = 1;  // seeds trained concurrently

    /// Published parameter settings for each algorithm.
    static ExperimentConfig defaults(Algorithm a) {
        ExperimentConfig c;
        c.algorithm = a;
        switch (a) {
            case Algorithm::PPSO:
                break;
            case Algorithm::BPSO:
            case Algorithm::SGPSO:
                c.c1 = 1.5;
                c.c2 = 1.5;
                c.omega_min = 0.3;
                c.omega_max = 0.9;
                c.initializer = Initializer::PseudoRandom;
                if (a == Algorithm::SGPSO) {
                    c.c3 = 0.5;
                    c.center = 100.0;
                }
                break;
            case Algorithm::GSA:
                c.c1 = 0.0;
                c.c2 = 0.0;
                c.omega_min = 0.0;
                c.omega_max = 0.0;
                c.initializer = Initializer::PseudoRandom;
                c.init_velocities = false;
                break;
            case Algorithm::PSOGSA:
                c.c1 = 1.0;
                c.c2 = 1.0;
                c.omega_min = 0.5;
                c.omega_max = 0.9;
                c.kbest_floor = 1.0;
                c.initializer = Initializer::PseudoRandom;
                c.init_velocities = false;
                break;
        }
        return c;
    }

    InertiaSchedule schedule() const {
        switch (algorithm) {
            case Algorithm::PPSO: return InertiaSchedule::tanh_increasing(omega_min, omega_max);
            case Algorithm::GSA: return InertiaSchedule::constant(0.0);
            default: return InertiaSchedule::linear_decreasing(omega_max, omega_min);
        }
    }

    bool operator==(const ExperimentConfig&) const = default;
};

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline bool parse_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + std::string(v) + "'");
}

inline double parse_real(const std::string& key, std::string_view v) {
    const auto d = parse_double(v);
    if (!d || !std::isfinite(*d)) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + std::string(v) + "'");
    }
    return *d;
}

inline std::size_t parse_count(const std::string& key, std::string_view v) {
    const auto n = parse_uint(v);
    if (!n) {
        throw ConfigError("config key '" + key + "': expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return static_cast<std::size_t>(*n);
}

/// "1,2,5-8" -> {1, 2, 5, 6, 7, 8}
inline std::vector<std::uint64_t> parse_seed_list(std::string_view v) {
    std::vector<std::uint64_t> seeds;
    std::size_t start = 0;
    while (start <= v.size()) {
        const auto comma = v.find(',', start);
        const std::string_view item =
            trim(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        const auto dash = item.find('-');
        if (dash != std::string_view::npos) {
            const auto lo = parse_uint(item.substr(0, dash));
            const auto hi = parse_uint(item.substr(dash + 1));
            if (!lo || !hi || *lo > *hi || *hi - *lo > 100000) {
                throw ConfigError("bad seed range '" + std::string(item) + "'");
            }
            for (std::uint64_t s = *lo; s <= *hi; ++s) {
                seeds.push_back(s);
            }
        } else {
            const auto s = parse_uint(item);
            if (!s) {
                throw ConfigError("bad seed '" + std::string(item) + "'");
            }
            seeds.push_back(*s);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return seeds;
}

inline void apply_entry(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string_view v = trim(raw);
    if (key == "dataset") {
        c.dataset = std::string(v);
    } else if (key == "label_column") {
        c.label_column = v == "last" ? LabelColumn{} : LabelColumn{parse_count(key, v)};
    } else if (key == "algorithm") {
        c.algorithm = parse_algorithm(v);
    } else if (key == "population" || key == "pop") {
        c.population = parse_count(key, v);
    } else if (key == "iterations" || key == "iters") {
        c.iterations = parse_count(key, v);
    } else if (key == "hidden") {
        c.hidden = v == "auto" ? 0 : parse_count(key, v);
    } else if (key == "split") {
        c.split = parse_real(key, v);
    } else if (key == "stratified") {
        c.stratified = parse_bool(key, v);
    } else if (key == "normalize") {
        if (v != "all" && v != "train") {
            throw ConfigError("config key 'normalize': expected 'all' or 'train'");
        }
        c.normalize_on_train = v == "train";
    } else if (key == "seeds") {
        c.seeds = parse_seed_list(v);
    } else if (key == "lower") {
        c.lower = parse_real(key, v);
    } else if (key == "upper") {
        c.upper = parse_real(key, v);
    } else if (key == "vmax_fraction") {
        c.vmax_fraction = parse_real(key, v);
    } else if (key == "c1") {
        c.c1 = parse_real(key, v);
    } else if (key == "c2") {
        c.c2 = parse_real(key, v);
    } else if (key == "c3") {
        c.c3 = parse_real(key, v);
    } else if (key == "center") {
        c.center = parse_real(key, v);
    } else if (key == "omega_min") {
        c.omega_min = parse_real(key, v);
    } else if (key == "omega_max") {
        c.omega_max = parse_real(key, v);
    } else if (key == "initializer") {
        if (v != "sobol" && v != "uniform") {
            throw ConfigError("config key 'initializer': expected 'sobol' or 'uniform'");
        }
        c.initializer = v == "sobol" ? Initializer::Sobol : Initializer::PseudoRandom;
    } else if (key == "init_velocities") {
        c.init_velocities = parse_bool(key, v);
    } else if (key == "draws") {
        if (v != "per-dimension" && v != "per-particle") {
            throw ConfigError("config key 'draws': expected 'per-dimension' or 'per-particle'");
        }
        c.draws = v == "per-dimension" ? DrawMode::PerDimension : DrawMode::PerParticle;
    } else if (key == "g0") {
        c.g0 = parse_real(key, v);
    } else if (key == "alpha") {
        c.alpha = parse_real(key, v);
    } else if (key == "kbest_floor") {
        c.kbest_floor = parse_real(key, v);
    } else if (key == "threads") {
        c.threads = parse_count(key, v);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

}  // namespace detail

/// Build a config from ordered key/value entries. The algorithm's defaults
/// are applied first, then every entry in order, so later entries win.
inline ExperimentConfig make_config(const ConfigEntries& entries) {
    Algorithm algorithm = Algorithm::PPSO;
    for (const auto& [key, value] : entries) {
        if (key == "algorithm") {
            algorithm = parse_algorithm(detail::trim(value));
        }
    }
    ExperimentConfig c = ExperimentConfig::defaults(algorithm);
    for (const auto& [key, value] : entries) {
        detail::apply_entry(c, key, value);
    }
    return c;
}

/// Flat "key = value" text; '#' starts a comment.
inline ConfigEntries parse_config_entries(std::istream& in) {
    ConfigEntries entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        entries.emplace_back(std::string(detail::trim(body.substr(0, eq))), std::string(detail::trim(body.substr(eq + 1))));
    }
    return entries;
}

inline ConfigEntries load_config_entries(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    return parse_config_entries(in);
}

inline ConfigEntries to_entries(const ExperimentConfig& c) {
    using detail::format_double;
    std::string seeds;
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
        seeds += (i ? "," : "") + std::to_string(c.seeds[i]);
    }
    return {
        {"dataset", c.dataset},
        {"label_column", c.label_column ? std::to_string(*c.label_column) : "last"},
        {"algorithm", std::string(to_string(c.algorithm))},
        {"population", std::to_string(c.population)},
        {"iterations", std::to_string(c.iterations)},
        {"hidden", c.hidden == 0 ? "auto" : std::to_string(c.hidden)},
        {"split", format_double(c.split)},
        {"stratified", c.stratified ? "true" : "false"},
        {"normalize", c.normalize_on_train ? "train" : "all"},
        {"seeds", seeds},
        {"lower", format_double(c.lower)},
        {"upper", format_double(c.upper)},
        {"vmax_fraction", format_double(c.vmax_fraction)},
        {"c1", format_double(c.c1)},
        {"c2", format_double(c.c2)},
        {"c3", format_double(c.c3)},
        {"center", format_double(c.center)},
        {"omega_min", format_double(c.omega_min)},
        {"omega_max", format_double(c.omega_max)},
        {"initializer", c.initializer == Initializer::Sobol ? "sobol" : "uniform"},
        {"init_velocities", c.init_velocities ? "true" : "false"},
        {"draws", c.draws == DrawMode::PerDimension ? "per-dimension" : "per-particle"},
        {"g0", format_double(c.g0)},
        {"alpha", format_double(c.alpha)},
        {"kbest_floor", format_double(c.kbest_floor)},
        {"threads", std::to_string(c.threads)},
    };
}

inline std::string to_text(const ExperimentConfig& c) {
    std::string out;
    for (const auto& [key, value] : to_entries(c)) {
        out += key + " = " + value + "\n";
    }
    return out;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return make_config(parse_config_entries(in));
}

inline void validate(const ExperimentConfig& c) {
    if (c.dataset.empty()) {
        throw ConfigError("no dataset given");
    }
    if (c.seeds.empty()) {
        throw ConfigError("seed list is empty");
    }
    auto sorted = c.seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("seed list has duplicates");
    }
    if (c.population == 0) {
        throw ConfigError("population must be at least 1");
    }
    if (!(c.split > 0.0 && c.split < 1.0)) {
        throw ConfigError("split fraction must lie strictly between 0 and 1");
    }
    if (!(c.lower < c.upper)) {
        throw InvalidBounds("lower bound must be below upper bound");
    }
    if (!(c.vmax_fraction > 0.0)) {
        throw ConfigError("vmax_fraction must be positive");
    }
    if (c.omega_min > c.omega_max) {
        throw ConfigError("omega_min must not exceed omega_max");
    }
    if (c.c1 < 0.0 || c.c2 < 0.0 || c.c3 < 0.0) {
        throw ConfigError("acceleration coefficients must be non-negative");
    }
    if (c.algorithm == Algorithm::GSA || c.algorithm == Algorithm::PSOGSA) {
        if (!(c.g0 > 0.0) || !(c.alpha >= 0.0) || !(c.kbest_floor > 0.0 && c.kbest_floor <= 1.0)) {
            throw ConfigError("gravitational parameters out of range");
        }
    }
}

struct SeedResult {
    std::uint64_t seed = 0;
    double train_mse = 0.0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    ConfusionMatrix confusion;
    ClassMetrics metrics;
    ConvergenceTrace trace;
    ParamVector best_params;
    double seconds = 0.0;  // wall clock for this seed; not part of the emitted files
};

struct RunReport {
    ExperimentConfig config;
    std::string dataset_name;
    std::vector<std::string> class_names;
    Topology topology;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::vector<SeedResult> seeds;
    std::size_t best_index = 0;  // highest test accuracy, earliest seed on ties
    std::optional<SwarmStabilitySummary> stability;
    double wall_clock_seconds = 0.0;

    const SeedResult& best() const { return seeds.at(best_index); }
};

namespace detail {

[[noreturn]] inline void rethrow_with_context(const std::string& context) {
    try {
        throw;
    } catch (const ConfigError& e) {
        throw ConfigError(context + e.what());
    } catch (const DataError& e) {
        throw DataError(context + e.what());
    } catch (const InputError& e) {
        throw InputError(context + e.what());
    } catch (const IoError& e) {
        throw IoError(context + e.what());
    } catch (const NumericError& e) {
        throw NumericError(context + e.what());
    }
}

inline std::size_t count_correct(const NetworkWeights& net, const Dataset& data, std::vector<std::size_t>* predicted) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::size_t p = predict(net, data.features.row(i));
        correct += p == data.labels[i] ? 1 : 0;
        if (predicted) {
            predicted->push_back(p);
        }
    }
    return correct;
}

inline OptimizationResult train(const ExperimentConfig& c, std::uint64_t seed, const Topology& topo,
                                const SampleSet& train) {
    const std::size_t dim = topo.dimension();
    const Bounds bounds = Bounds::uniform(dim, c.lower, c.upper);
    const double v_max = c.vmax_fraction * (c.upper - c.lower);
    if (c.algorithm == Algorithm::GSA || c.algorithm == Algorithm::PSOGSA) {
        GsaConfig g;
        g.population = c.population;
        g.max_iterations = c.iterations;
        g.seed = seed;
        g.bounds = bounds;
        g.g0 = c.g0;
        g.alpha = c.alpha;
        g.kbest_floor = c.kbest_floor;
        g.initializer = c.initializer;
        if (c.algorithm == Algorithm::GSA) {
            return run_gsa(g, topo, train);
        }
        PsoGsaConfig h;
        h.gsa = g;
        h.c1 = c.c1;
        h.c2 = c.c2;
        h.schedule = c.schedule();
        h.v_max = v_max;
        return run_psogsa(h, topo, train);
    }
    SwarmConfig s;
    s.algorithm = c.algorithm == Algorithm::PPSO    ? PsoVariant::PPSO
                  : c.algorithm == Algorithm::BPSO ? PsoVariant::BPSO
                                                   : PsoVariant::SGPSO;
    s.population = c.population;
    s.max_iterations = c.iterations;
    s.c1 = c.c1;
    s.c2 = c.c2;
    s.c3 = c.c3;
    s.geometric_center = c.center;
    s.schedule = c.schedule();
    s.bounds = bounds;
    s.v_max = v_max;
    s.seed = seed;
    s.initializer = c.initializer;
    s.init_velocities = c.init_velocities;
    s.draws = c.draws;
    return run_pso(s, topo, train);
}

}  // namespace detail

/// Train and evaluate once per seed on a fresh hold-out split.
inline RunReport run_experiment(const ExperimentConfig& config, const Dataset& raw) {
    const auto started = std::chrono::steady_clock::now();
    const std::string context = "[" + std::string(to_string(config.algorithm)) + " on " + raw.name + "] ";
    RunReport report;
    try {
        validate(config);
        raw.validate();
        report.config = config;
        report.dataset_name = raw.name;
        report.class_names = raw.class_names;
        const std::size_t p = raw.feature_count();
        const std::size_t r = raw.class_count();
        report.topology = Topology::make(p, config.hidden == 0 ? 2 * p + 1 : config.hidden, r);
        const Dataset whole = config.normalize_on_train ? raw : normalize(raw);

        report.seeds.resize(config.seeds.size());
        detail::parallel_for(config.seeds.size(), config.threads, [&](std::size_t k) {
            const auto seed_started = std::chrono::steady_clock::now();
            const std::uint64_t seed = config.seeds[k];
            DataSplit split = holdout_split(whole, config.split, seed, config.stratified);
            if (config.normalize_on_train) {
                const FeatureScaler scaler = FeatureScaler::fit(raw.features, split.train_indices);
                split.train.features = scaler.apply(split.train.features);
                split.test.features = scaler.apply(split.test.features);
            }
            const SampleSet train = to_samples(split.train);
            OptimizationResult opt = detail::train(config, seed, report.topology, train);
            const NetworkWeights net = decode(opt.best_position, report.topology);

            SeedResult& out = report.seeds[k];
            out.seed = seed;
            out.train_mse = opt.best_fitness;
            out.train_accuracy = static_cast<double>(detail::count_correct(net, split.train, nullptr)) /
                                 static_cast<double>(split.train.size());
            std::vector<std::size_t> predicted;
            detail::count_correct(net, split.test, &predicted);
            out.confusion = confusion_matrix(split.test.labels, predicted, r);
            out.metrics = class_metrics(out.confusion);
            out.test_accuracy = out.metrics.accuracy;
            out.trace = std::move(opt.trace);
            out.best_params = std::move(opt.best_position);
            out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - seed_started).count();
            if (k == 0) {
                report.train_size = split.train.size();
                report.test_size = split.test.size();
            }
        });
        for (std::size_t k = 1; k < report.seeds.size(); ++k) {
            if (report.seeds[k].test_accuracy > report.seeds[report.best_index].test_accuracy) {
                report.best_index = k;
            }
        }
        if (config.algorithm != Algorithm::GSA) {
            report.stability = summarize_swarm_stability(config.c1, config.c2, config.schedule(), config.iterations);
        }
    } catch (const Error&) {
        detail::rethrow_with_context(context);
    }
    report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

inline RunReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    Dataset raw;
    try {
        raw = load_csv(config.dataset, config.label_column);
    } catch (const Error&) {
        detail::rethrow_with_context("[" + config.dataset + "] ");
    }
    return run_experiment(config, raw);
}

/// Flat key/value metrics document for one report (keys sorted).
inline nlohmann::json report_json(const RunReport& report) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : to_entries(report.config)) {
        j["config." + key] = value;
    }
    j["dataset.name"] = report.dataset_name;
    j["dataset.train_size"] = report.train_size;
    j["dataset.test_size"] = report.test_size;
    j["dataset.classes"] = report.class_names.size();
    j["topology.inputs"] = report.topology.inputs;
    j["topology.hidden"] = report.topology.hidden;
    j["topology.outputs"] = report.topology.outputs;
    j["topology.dimension"] = report.topology.dimension();
    for (const auto& s : report.seeds) {
        const std::string prefix = "seed." + std::to_string(s.seed) + ".";
        j[prefix + "train_mse"] = s.train_mse;
        j[prefix + "train_accuracy"] = s.train_accuracy;
        j[prefix + "test_accuracy"] = s.test_accuracy;
        j[prefix + "macro_f"] = s.metrics.macro_f;
        j[prefix + "headline_f"] = s.metrics.headline_f();
    }
    const SeedResult& best = report.best();
    j["best.seed"] = best.seed;
    j["best.test_accuracy"] = best.test_accuracy;
    j["best.train_mse"] = best.train_mse;
    j["best.macro_f"] = best.metrics.macro_f;
    j["best.headline_f"] = best.metrics.headline_f();
    if (best.metrics.positive_f) {
        j["best.positive_f"] = *best.metrics.positive_f;
    }
    for (std::size_t k = 0; k < best.metrics.per_class.size(); ++k) {
        const auto& m = best.metrics.per_class[k];
        const std::string prefix = "best.class." + std::to_string(k) + ".";
        j[prefix + "name"] = k < report.class_names.size() ? report.class_names[k] : std::to_string(k);
        j[prefix + "tp"] = m.tp;
        j[prefix + "fp"] = m.fp;
        j[prefix + "fn"] = m.fn;
        j[prefix + "tn"] = m.tn;
        j[prefix + "precision"] = m.precision;
        j[prefix + "recall"] = m.recall;
        j[prefix + "f_measure"] = m.f_measure;
        j[prefix + "precision_undefined"] = m.precision_undefined;
        j[prefix + "recall_undefined"] = m.recall_undefined;
    }
    if (report.stability) {
        const auto& st = *report.stability;
        j["stability.psi_convention"] = "expected value (c1 + c2) / 2";
        j["stability.psi"] = st.psi;
        j["stability.omega_start"] = st.omega_start;
        j["stability.omega_end"] = st.omega_end;
        j["stability.paper_condition_start"] = st.at_start.paper_stable;
        j["stability.paper_condition_end"] = st.at_end.paper_stable;
        j["stability.spectral_radius_start"] = st.at_start.spectral_radius;
        j["stability.spectral_radius_end"] = st.at_end.spectral_radius;
        j["stability.paper_stable_fraction"] = st.paper_stable_fraction;
        j["stability.sr_stable_fraction"] = st.sr_stable_fraction;
    }
    j["wall_clock_seconds"] = report.wall_clock_seconds;
    return j;
}

inline std::string summary_text(const RunReport& report) {
    std::ostringstream out;
    const auto pct = [](double x) { return detail::format_double(std::round(x * 10000.0) / 100.0); };
    out << "algorithm: " << to_string(report.config.algorithm) << "\n";
    out << "dataset: " << report.dataset_name << " (" << report.train_size << " train / " << report.test_size
        << " test, " << report.class_names.size() << " classes)\n";
    out << "topology: " << report.topology.inputs << "-" << report.topology.hidden << "-" << report.topology.outputs
        << " (D = " << report.topology.dimension() << ")\n";
    out << "population: " << report.config.population << ", iterations: " << report.config.iterations << "\n\n";
    out << "seed  train_mse  train_acc%  test_acc%  headline_F%\n";
    for (const auto& s : report.seeds) {
        out << s.seed << "  " << detail::format_double(s.train_mse) << "  " << pct(s.train_accuracy) << "  "
            << pct(s.test_accuracy) << "  " << pct(s.metrics.headline_f()) << "\n";
    }
    const SeedResult& best = report.best();
    out << "\nbest seed " << best.seed << ": test accuracy " << pct(best.test_accuracy) << "%, F-measure "
        << pct(best.metrics.headline_f()) << "% (" << (best.metrics.positive_f ? "positive class" : "macro average")
        << ")\n";
    if (report.stability) {
        const auto& st = *report.stability;
        out << "\nstability at psi = (c1 + c2) / 2 = " << detail::format_double(st.psi) << ":\n";
        out << "  omega " << detail::format_double(st.omega_start) << " -> " << detail::format_double(st.omega_end)
            << "\n  0 < omega < psi - 1 holds on " << pct(st.paper_stable_fraction)
            << "% of iterations\n  spectral radius < 1 holds on " << pct(st.sr_stable_fraction)
            << "% of iterations\n";
    }
    out << "\nwall clock: " << detail::format_double(report.wall_clock_seconds) << " s\n";
    return out.str();
}

/// Write one convergence CSV per seed, the best seed's confusion CSV,
/// metrics.json and summary.txt. Existing files are only replaced with `force`.
inline std::vector<std::filesystem::path> emit_outputs(const RunReport& report, const std::filesystem::path& dir,
                                                       bool force) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    std::vector<std::pair<fs::path, std::string>> files;
    for (const auto& s : report.seeds) {
        std::ostringstream csv;
        s.trace.write_csv(csv);
        files.emplace_back(dir / ("convergence_seed" + std::to_string(s.seed) + ".csv"), csv.str());
    }
    {
        std::ostringstream csv;
        report.best().confusion.write_csv(csv, report.class_names);
        files.emplace_back(dir / "confusion_best.csv", csv.str());
    }
    files.emplace_back(dir / "metrics.json", report_json(report).dump(2) + "\n");
    files.emplace_back(dir / "summary.txt", summary_text(report));

    if (!force) {
        for (const auto& [path, _] : files) {
            if (fs::exists(path)) {
                throw IoError(path.string() + " already exists (use --force to overwrite)");
            }
        }
    }
    std::vector<fs::path> written;
    for (const auto& [path, body] : files) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << body;
        if (!out) {
            throw IoError("failed writing " + path.string());
        }
        written.push_back(path);
    }
    return written;
}

struct ComparisonRow {
    Algorithm algorithm = Algorithm::PPSO;
    std::uint64_t best_seed = 0;
    double best_accuracy = 0.0;
    double best_f = 0.0;  // headline F-measure of the best seed
    bool max_accuracy = false;
    bool max_f = false;
};

struct Comparison {
    std::string dataset_name;
    std::vector<ComparisonRow> rows;
    std::vector<RunReport> reports;

    void write_csv(std::ostream& out) const {
        out << "algorithm,best_seed,best_accuracy,best_f_measure,is_best_accuracy,is_best_f_measure\n";
        for (const auto& r : rows) {
            out << to_string(r.algorithm) << ',' << r.best_seed << ',' << detail::format_double(r.best_accuracy) << ','
                << detail::format_double(r.best_f) << ',' << int(r.max_accuracy) << ',' << int(r.max_f) << '\n';
        }
    }
};

/// Run every config on the same dataset and seeds; mark the per-dataset maxima (ties all marked).
inline Comparison compare_algorithms(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) {
        throw ConfigError("nothing to compare");
    }
    for (const auto& c : configs) {
        validate(c);
    }
    const ExperimentConfig& first = configs.front();
    for (const auto& c : configs) {
        if (c.dataset != first.dataset || c.label_column != first.label_column || c.seeds != first.seeds ||
            c.split != first.split || c.stratified != first.stratified ||
            c.normalize_on_train != first.normalize_on_train) {
            throw ConfigError("compared configs must share dataset, seeds and split settings");
        }
    }
    Dataset raw;
    try {
        raw = load_csv(first.dataset, first.label_column);
    } catch (const Error&) {
        detail::rethrow_with_context("[" + first.dataset + "] ");
    }
    Comparison cmp;
    cmp.dataset_name = raw.name;
    for (const auto& c : configs) {
        RunReport rep = run_experiment(c, raw);
        const SeedResult& best = rep.best();
        cmp.rows.push_back({c.algorithm, best.seed, best.test_accuracy, best.metrics.headline_f(), false, false});
        cmp.reports.push_back(std::move(rep));
    }
    double top_acc = 0.0;
    double top_f = 0.0;
    for (const auto& r : cmp.rows) {
        top_acc = std::max(top_acc, r.best_accuracy);
        top_f = std::max(top_f, r.best_f);
    }
    for (auto& r : cmp.rows) {
        r.max_accuracy = r.best_accuracy == top_acc;
        r.max_f = r.best_f == top_f;
    }
    return cmp;
}

}  // namespace ppso

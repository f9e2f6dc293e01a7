#include "hydrocm/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hydrocm/error.hpp"

namespace hydrocm {

namespace {

using json = nlohmann::json;

template <typename T>
T field(const json& obj, const char* key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(path + key, std::string("wrong type (") + e.what() + ")");
    }
}

std::string required_string(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError(path + key, "missing");
    return field<std::string>(obj, key, path, "");
}

SetupKind parse_setup_kind(const std::string& name) {
    if (name == "ethane_g") return SetupKind::ethane_g;
    if (name == "ethane_s") return SetupKind::ethane_s;
    if (name == "ring") return SetupKind::ring;
    if (name == "panmictic_ssga") return SetupKind::panmictic_ssga;
    if (name == "panmictic_sa") return SetupKind::panmictic_sa;
    if (name == "custom") return SetupKind::custom;
    throw ConfigError("setup.type", "unknown setup '" + name + "'");
}

}  // namespace

std::string setup_name(SetupKind kind) {
    switch (kind) {
        case SetupKind::ethane_g: return "ethane_g";
        case SetupKind::ethane_s: return "ethane_s";
        case SetupKind::ring: return "ring";
        case SetupKind::panmictic_ssga: return "panmictic_ssga";
        case SetupKind::panmictic_sa: return "panmictic_sa";
        case SetupKind::custom: return "custom";
    }
    return "unknown";
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "expected an object");

    ExperimentConfig cfg;
    if (!doc.contains("problem")) throw ConfigError("problem", "missing");
    const auto& problem = doc.at("problem");
    const auto kind = required_string(problem, "type", "problem.");
    if (kind == "mmdp") {
        cfg.problem.kind = ProblemConfig::Kind::mmdp;
        cfg.problem.k = field<std::size_t>(problem, "k", "problem.", cfg.problem.k);
    } else if (kind == "ssp") {
        cfg.problem.kind = ProblemConfig::Kind::ssp;
        cfg.problem.n = field<std::size_t>(problem, "n", "problem.", cfg.problem.n);
        cfg.problem.seed = field<std::uint64_t>(problem, "seed", "problem.", cfg.problem.seed);
        cfg.problem.instance_file = field<std::string>(problem, "instance", "problem.", "");
    } else {
        throw ConfigError("problem.type", "unknown problem '" + kind + "'");
    }

    if (!doc.contains("setup")) throw ConfigError("setup", "missing");
    const auto& setup = doc.at("setup");
    if (setup.is_string()) {
        cfg.setup = parse_setup_kind(setup.get<std::string>());
    } else {
        cfg.setup = parse_setup_kind(required_string(setup, "type", "setup."));
        cfg.ring_size = field<std::size_t>(setup, "n", "setup.", cfg.ring_size);
        if (setup.contains("fast_positions")) {
            cfg.fast_positions = field<std::set<std::size_t>>(setup, "fast_positions", "setup.", {});
        }
        cfg.topology_file = field<std::string>(setup, "topology", "setup.", "");
    }

    cfg.repetitions = field<std::size_t>(doc, "repetitions", "", cfg.repetitions);
    cfg.budget = field<std::uint64_t>(doc, "budget", "", cfg.budget);
    const auto mode = field<std::string>(doc, "mode", "", "virtual");
    if (mode == "virtual") {
        cfg.mode = TimeMode::virtual_time;
    } else if (mode == "wall") {
        cfg.mode = TimeMode::wall_clock;
    } else {
        throw ConfigError("mode", "expected 'virtual' or 'wall'");
    }
    cfg.master_seed = field<std::uint64_t>(doc, "master_seed", "", cfg.master_seed);
    cfg.migration_frequency = field<std::size_t>(doc, "migration_frequency", "", cfg.migration_frequency);
    cfg.migration_count = field<std::size_t>(doc, "migration_count", "", cfg.migration_count);
    const auto multiplicity = field<std::string>(doc, "multiplicity", "", "batch");
    if (multiplicity == "batch") {
        cfg.multiplicity = MultiplicityMode::batch;
    } else if (multiplicity == "rate") {
        cfg.multiplicity = MultiplicityMode::rate;
    } else {
        throw ConfigError("multiplicity", "expected 'batch' or 'rate'");
    }
    cfg.slow_speed = field<double>(doc, "slow_speed", "", cfg.slow_speed);
    cfg.single_processor = field<bool>(doc, "single_processor", "", cfg.single_processor);

    if (doc.contains("ga")) {
        const auto& ga = doc.at("ga");
        cfg.ga.pop_size = field<std::size_t>(ga, "pop_size", "ga.", cfg.ga.pop_size);
        cfg.ga.p_crossover = field<double>(ga, "p_crossover", "ga.", cfg.ga.p_crossover);
        cfg.ga.p_mutation_per_bit = field<double>(ga, "p_mutation_per_bit", "ga.", cfg.ga.p_mutation_per_bit);
        cfg.ga.tournament_size = field<std::size_t>(ga, "tournament_size", "ga.", cfg.ga.tournament_size);
    }
    if (doc.contains("sa")) {
        const auto& sa = doc.at("sa");
        cfg.sa.t0 = field<double>(sa, "t0", "sa.", cfg.sa.t0);
        const auto schedule = field<std::string>(sa, "schedule", "sa.", "fast");
        if (schedule == "fast") {
            cfg.sa.schedule = CoolingSchedule::fast;
        } else if (schedule == "geometric") {
            cfg.sa.schedule = CoolingSchedule::geometric;
        } else {
            throw ConfigError("sa.schedule", "expected 'fast' or 'geometric'");
        }
        cfg.sa.schedule_rate = field<double>(sa, "schedule_rate", "sa.", cfg.sa.schedule_rate);
        cfg.sa.p_perturb_per_bit = field<double>(sa, "p_perturb_per_bit", "sa.", cfg.sa.p_perturb_per_bit);
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto cfg = parse_experiment_config(buffer.str());
    // Relative file references resolve against the config's directory.
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
    };
    resolve(cfg.topology_file);
    resolve(cfg.problem.instance_file);
    return cfg;
}

void validate_experiment_config(const ExperimentConfig& cfg) {
    if (cfg.problem.kind == ProblemConfig::Kind::mmdp && cfg.problem.k == 0) {
        throw ConfigError("problem.k", "must be at least 1");
    }
    if (cfg.problem.kind == ProblemConfig::Kind::ssp && cfg.problem.instance_file.empty() && cfg.problem.n < 2) {
        throw ConfigError("problem.n", "must be at least 2");
    }
    if (cfg.repetitions < 1) throw ConfigError("repetitions", "must be at least 1");
    if (cfg.budget < 1) throw ConfigError("budget", "must be at least 1");
    if (cfg.migration_frequency < 1) throw ConfigError("migration_frequency", "must be at least 1");
    if (!(cfg.slow_speed > 0.0)) throw ConfigError("slow_speed", "must be positive");
    if (cfg.setup == SetupKind::ring) {
        if (cfg.ring_size < 2) throw ConfigError("setup.n", "ring needs at least 2 islands");
        for (auto p : cfg.fast_positions) {
            if (p >= cfg.ring_size) throw ConfigError("setup.fast_positions", "position outside the ring");
        }
    }
    if (cfg.setup == SetupKind::custom) {
        if (cfg.topology_file.empty()) throw ConfigError("setup.topology", "custom setup needs a topology file");
        if (!std::filesystem::exists(cfg.topology_file)) {
            throw ConfigError("setup.topology", "file '" + cfg.topology_file + "' does not exist");
        }
        TopologySpec spec;
        try {
            spec = read_topology_file(cfg.topology_file);
        } catch (const ParseError& e) {
            throw ConfigError("setup.topology", e.what());
        }
        if (auto violations = validate_hydrocarbon(spec); !violations.empty()) {
            throw ConfigError("setup.topology", "invalid topology: " + violations.front());
        }
    }
    if (!cfg.problem.instance_file.empty() && !std::filesystem::exists(cfg.problem.instance_file)) {
        throw ConfigError("problem.instance", "file '" + cfg.problem.instance_file + "' does not exist");
    }
    try {
        cfg.ga.validate();
        cfg.sa.validate();
    } catch (const ParameterError& e) {
        throw ConfigError("ga/sa", e.what());
    }
}

Problem build_problem(const ProblemConfig& config) {
    if (config.kind == ProblemConfig::Kind::mmdp) return Problem(MmdpInstance{config.k});
    if (!config.instance_file.empty()) {
        std::ifstream in(config.instance_file);
        if (!in) throw std::ios_base::failure("cannot open instance file '" + config.instance_file + "'");
        return Problem(read_ssp_instance(in));
    }
    return Problem(generate_ssp_instance(config.n, config.seed));
}

RunResult run_repetition(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t seed) {
    if (cfg.mode == TimeMode::virtual_time && !cfg.single_processor) {
        if (cfg.setup == SetupKind::panmictic_ssga) return run_panmictic_ssga(cfg.ga, problem, cfg.budget, seed);
        if (cfg.setup == SetupKind::panmictic_sa) return run_panmictic_sa(cfg.sa, problem, cfg.budget, seed);
    }

    RunConfig rc;
    switch (cfg.setup) {
        case SetupKind::ethane_g: rc.topology = ethane_topology(EthaneVariant::G, cfg.slow_speed); break;
        case SetupKind::ethane_s: rc.topology = ethane_topology(EthaneVariant::S, cfg.slow_speed); break;
        case SetupKind::ring: rc.topology = ring_topology(cfg.ring_size, cfg.fast_positions, cfg.slow_speed); break;
        case SetupKind::panmictic_ssga: rc.topology = single_node_topology(Algorithm::ssga); break;
        case SetupKind::panmictic_sa: rc.topology = single_node_topology(Algorithm::sa); break;
        case SetupKind::custom: rc.topology = read_topology_file(cfg.topology_file); break;
    }
    rc.migration_frequency = cfg.migration_frequency;
    rc.migration_count = cfg.migration_count;
    rc.multiplicity = cfg.multiplicity;
    rc.evaluation_budget = cfg.budget;
    rc.mode = cfg.mode;
    rc.seed = seed;
    rc.single_processor = cfg.single_processor;
    rc.ga = cfg.ga;
    rc.sa = cfg.sa;
    return run_experiment(rc, problem);
}

std::vector<RunResult> run_experiments(const ExperimentConfig& cfg, const Problem& problem) {
    std::vector<RunResult> runs;
    runs.reserve(cfg.repetitions);
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        runs.push_back(run_repetition(cfg, problem, cfg.master_seed + rep));
    }
    return runs;
}

}  // namespace hydrocm

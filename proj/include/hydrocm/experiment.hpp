#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydrocm/engine.hpp"

namespace hydrocm {

enum class SetupKind { ethane_g, ethane_s, ring, panmictic_ssga, panmictic_sa, custom };

struct ProblemConfig {
    enum class Kind { ssp, mmdp } kind = Kind::mmdp;
    std::size_t n = 16;          // ssp
    std::uint64_t seed = 1;      // ssp instance seed
    std::string instance_file;   // ssp: load instead of generating
    std::size_t k = 2;           // mmdp
};

/// Everything needed to reproduce a batch of runs.
struct ExperimentConfig {
    ProblemConfig problem;
    SetupKind setup = SetupKind::ethane_g;
    std::size_t ring_size = 8;
    std::set<std::size_t> fast_positions{0, 3};
    std::string topology_file;  // custom
    std::size_t repetitions = 100;
    std::uint64_t budget = 500'000;
    TimeMode mode = TimeMode::virtual_time;
    std::uint64_t master_seed = 1;
    std::size_t migration_frequency = 50;
    std::size_t migration_count = 1;
    MultiplicityMode multiplicity = MultiplicityMode::batch;
    double slow_speed = kHydrogenSpeed;
    bool single_processor = false;
    GaParams ga;
    SaParams sa;
};

/// Thrown for config content that parses but is not acceptable; names the
/// field at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
void validate_experiment_config(const ExperimentConfig& config);  // throws ConfigError

Problem build_problem(const ProblemConfig& config);
std::string setup_name(SetupKind kind);

/// Runs one repetition with the given seed.
RunResult run_repetition(const ExperimentConfig& config, const Problem& problem, std::uint64_t seed);

/// Runs all repetitions with seeds master_seed + index.
std::vector<RunResult> run_experiments(const ExperimentConfig& config, const Problem& problem);

}  // namespace hydrocm

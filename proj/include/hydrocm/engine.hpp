#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "hydrocm/ga.hpp"
#include "hydrocm/problems.hpp"
#include "hydrocm/run_result.hpp"
#include "hydrocm/sa.hpp"
#include "hydrocm/topology.hpp"

namespace hydrocm {

enum class TimeMode { virtual_time, wall_clock };

struct RunConfig {
    TopologySpec topology;
    std::size_t migration_frequency = 50;
    std::size_t migration_count = 1;
    MultiplicityMode multiplicity = MultiplicityMode::batch;
    std::uint64_t evaluation_budget = 0;
    TimeMode mode = TimeMode::virtual_time;
    std::uint64_t seed = 0;
    /// Time-share every island on one speed-1 processor (sequential baseline
    /// for speedup measurements).
    bool single_processor = false;
    /// Wall-clock mode: sleep after each iteration of a slow node so it runs
    /// at roughly its speed factor.
    bool throttle = true;
    GaParams ga;  // p_mutation_per_bit 0 -> 4/L
    SaParams sa;
};

/// Global stop flag shared by all islands of one run. Raising it more than
/// once is harmless.
class StopSignal {
public:
    void raise() noexcept { stopped_.store(true, std::memory_order_release); }
    bool raised() const noexcept { return stopped_.load(std::memory_order_acquire); }

private:
    std::atomic<bool> stopped_{false};
};

inline void terminate_broadcast(StopSignal& signal) { signal.raise(); }

/// Runs one island-model experiment. Every `migration_frequency` local
/// iterations an island sends emigrants on each outgoing channel and then
/// drains its incoming channels. The run stops as soon as any island holds
/// the optimum or the global evaluation budget is spent.
///
/// Throws ValidationError for an invalid topology and ParameterError for a
/// zero budget or migration frequency.
RunResult run_experiment(const RunConfig& config, const Problem& problem);

}  // namespace hydrocm

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hydrocm {

struct TracePoint {
    double time_ms = 0.0;
    double fitness = 0.0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct IslandStats {
    std::string id;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    std::uint64_t emigrants_sent = 0;
    std::uint64_t immigrants_received = 0;
    std::uint64_t dropped = 0;  // messages lost to channel overflow on this island's inbox

    friend bool operator==(const IslandStats&, const IslandStats&) = default;
};

/// Outcome of one run. `elapsed_ms` is virtual milliseconds in virtual-time
/// mode and wall-clock milliseconds otherwise. `trace` holds one point per
/// improvement of the global best, starting at time 0.
struct RunResult {
    std::uint64_t seed = 0;
    std::uint64_t total_evaluations = 0;
    double elapsed_ms = 0.0;
    double best_fitness = 0.0;
    bool success = false;
    std::vector<TracePoint> trace;
    std::vector<IslandStats> per_island;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

}  // namespace hydrocm

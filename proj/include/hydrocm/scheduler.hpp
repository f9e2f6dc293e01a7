#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hydrocm {

/// Deterministic weighted round-robin over islands. Virtual time advances in
/// unit ticks; during each tick a node with speed factor f earns f credits
/// and runs one iteration per whole credit, so over H ticks it runs exactly
/// floor(H * f) iterations. Within a tick, nodes run in index order.
///
/// Factors are quantised to 1e-6 and accumulated as integers.
class VirtualScheduler {
public:
    static constexpr std::int64_t kResolution = 1'000'000;

    explicit VirtualScheduler(std::span<const double> speed_factors);

    /// Node indices to run during the next tick, in execution order. Advances
    /// the clock by one tick.
    const std::vector<std::size_t>& next_tick();

    std::uint64_t now() const noexcept { return tick_; }
    std::size_t size() const noexcept { return rates_.size(); }

    /// Runs `ticks` ticks and returns per-node iteration counts.
    std::vector<std::uint64_t> simulate(std::uint64_t ticks);

private:
    std::vector<std::int64_t> rates_;
    std::vector<std::int64_t> credit_;
    std::vector<std::size_t> batch_;
    std::uint64_t tick_ = 0;
};

}  // namespace hydrocm

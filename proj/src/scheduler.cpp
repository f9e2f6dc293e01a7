#include "hydrocm/scheduler.hpp"

#include <cmath>

#include "hydrocm/error.hpp"

namespace hydrocm {

VirtualScheduler::VirtualScheduler(std::span<const double> speed_factors) {
    rates_.reserve(speed_factors.size());
    for (double f : speed_factors) {
        if (!(f > 0.0)) throw ParameterError("speed factors must be positive");
        const auto rate = static_cast<std::int64_t>(std::llround(f * static_cast<double>(kResolution)));
        if (rate <= 0) throw ParameterError("speed factor below scheduler resolution");
        rates_.push_back(rate);
    }
    credit_.assign(rates_.size(), 0);
}

const std::vector<std::size_t>& VirtualScheduler::next_tick() {
    ++tick_;
    batch_.clear();
    bool any = true;
    for (std::size_t i = 0; i < rates_.size(); ++i) credit_[i] += rates_[i];
    // Nodes faster than 1.0 run several times per tick, interleaved in index order.
    while (any) {
        any = false;
        for (std::size_t i = 0; i < rates_.size(); ++i) {
            if (credit_[i] >= kResolution) {
                credit_[i] -= kResolution;
                batch_.push_back(i);
                any = true;
            }
        }
    }
    return batch_;
}

std::vector<std::uint64_t> VirtualScheduler::simulate(std::uint64_t ticks) {
    std::vector<std::uint64_t> counts(rates_.size(), 0);
    for (std::uint64_t t = 0; t < ticks; ++t) {
        for (auto node : next_tick()) ++counts[node];
    }
    return counts;
}

}  // namespace hydrocm

#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "hydrocm/genome.hpp"

namespace hydrocm {

struct MigrationMessage {
    Genome genome;
    double fitness = 0.0;
    std::size_t src = 0;
    std::uint64_t seq = 0;
};

/// Bounded single-producer/single-consumer mailbox. send() never blocks:
/// when full, the oldest queued message is dropped. poll() returns whatever
/// is queued, FIFO, without waiting.
class MigrationChannel {
public:
    static constexpr std::size_t kDefaultCapacity = 8;

    explicit MigrationChannel(std::size_t capacity = kDefaultCapacity);

    MigrationChannel(const MigrationChannel&) = delete;
    MigrationChannel& operator=(const MigrationChannel&) = delete;

    void send(MigrationMessage message);
    std::vector<MigrationMessage> poll();

    std::uint64_t dropped() const;
    std::size_t pending() const;
    std::size_t capacity() const noexcept { return capacity_; }

    /// Copies of the queued messages, oldest first.
    std::vector<MigrationMessage> snapshot() const;

private:
    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::deque<MigrationMessage> queue_;
    std::uint64_t dropped_ = 0;
};

}  // namespace hydrocm

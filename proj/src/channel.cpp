#include "hydrocm/channel.hpp"

#include "hydrocm/error.hpp"

namespace hydrocm {

MigrationChannel::MigrationChannel(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ParameterError("channel capacity must be positive");
}

void MigrationChannel::send(MigrationMessage message) {
    std::lock_guard lock(mutex_);
    if (queue_.size() == capacity_) {
        queue_.pop_front();
        ++dropped_;
    }
    queue_.push_back(std::move(message));
}

std::vector<MigrationMessage> MigrationChannel::poll() {
    std::lock_guard lock(mutex_);
    std::vector<MigrationMessage> out(std::make_move_iterator(queue_.begin()), std::make_move_iterator(queue_.end()));
    queue_.clear();
    return out;
}

std::uint64_t MigrationChannel::dropped() const {
    std::lock_guard lock(mutex_);
    return dropped_;
}

std::size_t MigrationChannel::pending() const {
    std::lock_guard lock(mutex_);
    return queue_.size();
}

std::vector<MigrationMessage> MigrationChannel::snapshot() const {
    std::lock_guard lock(mutex_);
    return {queue_.begin(), queue_.end()};
}

}  // namespace hydrocm

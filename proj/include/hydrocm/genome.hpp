#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hydrocm {

using Rng = std::mt19937_64;

/// Fixed-length bitstring. Each element holds exactly 0 or 1.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::size_t length) : bits_(length, 0) {}
    explicit Genome(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters.
    static Genome from_string(std::string_view text);
    static Genome random(std::size_t length, Rng& rng);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<const std::uint8_t> slice(std::size_t offset, std::size_t count) const {
        return std::span<const std::uint8_t>(bits_).subspan(offset, count);
    }

    Genome complement() const;
    std::string to_string() const;

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Flips each bit independently with probability `p_per_bit`. Shared by the
/// GA mutation and the SA neighbourhood move.
Genome flip_bits(const Genome& g, double p_per_bit, Rng& rng);

}  // namespace hydrocm

#include "hydrocm/genome.hpp"

#include <algorithm>

#include "hydrocm/error.hpp"
#include "hydrocm/individual.hpp"

namespace hydrocm {

Genome::Genome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw ParameterError("genome bits must be 0 or 1");
    }
}

Genome Genome::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw ParameterError("genome string must contain only '0' and '1'");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return Genome(std::move(bits));
}

Genome Genome::random(std::size_t length, Rng& rng) {
    Genome g(length);
    // 64 bits per draw
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 64 == 0) word = rng();
        g.bits_[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
    }
    return g;
}

Genome Genome::complement() const {
    Genome out = *this;
    for (auto& b : out.bits_) b ^= 1;
    return out;
}

std::string Genome::to_string() const {
    std::string s(bits_.size(), '0');
    std::transform(bits_.begin(), bits_.end(), s.begin(), [](std::uint8_t b) { return b ? '1' : '0'; });
    return s;
}

Genome flip_bits(const Genome& g, double p_per_bit, Rng& rng) {
    if (!(p_per_bit >= 0.0 && p_per_bit <= 1.0)) throw ParameterError("flip probability must be in [0, 1]");
    Genome out = g;
    if (p_per_bit == 0.0 || g.empty()) return out;
    if (p_per_bit == 1.0) return g.complement();
    // Skip ahead by geometric gaps between flipped positions.
    std::geometric_distribution<std::size_t> gap(p_per_bit);
    for (std::size_t i = gap(rng); i < out.size(); i += 1 + gap(rng)) out.flip(i);
    return out;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

}  // namespace hydrocm

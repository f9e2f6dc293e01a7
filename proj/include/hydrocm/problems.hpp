#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hydrocm/genome.hpp"

namespace hydrocm {

struct SubsetSumInstance {
    std::vector<std::int64_t> weights;
    std::int64_t capacity = 0;
    std::int64_t known_optimum = 0;

    std::size_t size() const noexcept { return weights.size(); }
    friend bool operator==(const SubsetSumInstance&, const SubsetSumInstance&) = default;
};

struct MmdpInstance {
    std::size_t k = 0;  // number of 6-bit blocks

    std::size_t genome_length() const noexcept { return 6 * k; }
    double optimum() const noexcept { return static_cast<double>(k); }
};

inline constexpr std::size_t kMmdpBlockBits = 6;
inline constexpr std::int64_t kSspMaxWeight = 10'000;
inline constexpr double kOptimumEpsilon = 1e-9;

/// Number of 1-bits in a 6-bit block.
int unitation(std::span<const std::uint8_t> block);

/// Bipolar deceptive sub-function over the unitation of one block.
double mmdp_subfunction(int ones);

double mmdp_fitness(const Genome& g, const MmdpInstance& inst);

/// Subset sum of the masked weights; sums above capacity are reflected
/// back below it: max(0, C - (s - C)).
double ssp_fitness(const Genome& g, const SubsetSumInstance& inst);

/// Gaussian weights (mean 5000, sd 5000/3) clamped to [0, 1e4]; capacity is
/// the sum of a random half of the elements, so it is always reachable.
SubsetSumInstance generate_ssp_instance(std::size_t n, std::uint64_t seed);

/// Flat text format: n, capacity, known optimum, then one weight per line.
void write_ssp_instance(std::ostream& out, const SubsetSumInstance& inst);
SubsetSumInstance read_ssp_instance(std::istream& in);

/// A benchmark problem: fitness, optimum test and genome length.
class Problem {
public:
    using Instance = std::variant<SubsetSumInstance, MmdpInstance>;

    explicit Problem(SubsetSumInstance inst) : inst_(std::move(inst)) {}
    explicit Problem(MmdpInstance inst) : inst_(inst) {}

    std::size_t genome_length() const noexcept;
    double evaluate(const Genome& g) const;
    double optimum() const noexcept;
    bool is_optimum(double fitness) const noexcept;
    std::string name() const;

    const Instance& instance() const noexcept { return inst_; }

private:
    Instance inst_;
};

bool is_optimum(double fitness, const Problem& problem);

}  // namespace hydrocm

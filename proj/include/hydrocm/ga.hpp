#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hydrocm/individual.hpp"
#include "hydrocm/run_result.hpp"

namespace hydrocm {

struct GaParams {
    std::size_t pop_size = 64;
    double p_crossover = 0.8;
    double p_mutation_per_bit = 0.0;  // 0 means "4 / genome length"
    std::size_t tournament_size = 2;

    /// Default settings for a chromosome of `length` bits.
    static GaParams defaults_for(std::size_t length);
    /// Resolves the per-bit mutation rate against the genome length.
    double mutation_rate(std::size_t length) const;
    void validate() const;
};

/// Steady-state population (P(t)) with its generation counter.
struct Population {
    std::vector<Individual> members;
    std::uint64_t generation = 0;

    std::size_t size() const noexcept { return members.size(); }
    std::size_t best_index() const;
    std::size_t worst_index() const;
    const Individual& best() const { return members[best_index()]; }
};

/// Random population; costs `pop_size` evaluations.
Population init_population(const GaParams& params, const Problem& problem, Rng& rng);

/// Binary (or k-ary) tournament with replacement; the first drawn member
/// wins ties.
const Individual& tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng);

Genome one_point_crossover(const Genome& a, const Genome& b, double p_crossover, Rng& rng);

Genome mutate(const Genome& g, double p_per_bit, Rng& rng);

/// One steady-state iteration: two parents, one offspring, one evaluation.
/// The offspring replaces the worst member unless it is strictly worse.
/// Returns the number of evaluations performed.
std::uint64_t ssga_step(Population& pop, const GaParams& params, const Problem& problem, Rng& rng);

/// Replaces the worst member with `incoming` unconditionally.
void immigrate(Population& pop, Individual incoming);

/// Uniformly random member, copied.
Individual select_emigrant(const Population& pop, Rng& rng);

/// Single-population ssGA until the optimum is found or `budget`
/// evaluations are spent. Time is virtual: one millisecond per iteration.
RunResult run_panmictic_ssga(const GaParams& params, const Problem& problem, std::uint64_t budget,
                             std::uint64_t seed);

}  // namespace hydrocm

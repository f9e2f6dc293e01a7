#pragma once

#include "hydrocm/genome.hpp"
#include "hydrocm/problems.hpp"

namespace hydrocm {

/// Genome plus its cached fitness.
struct Individual {
    Genome genome;
    double fitness = 0.0;

    static Individual evaluated(Genome g, const Problem& problem) {
        double f = problem.evaluate(g);
        return Individual{std::move(g), f};
    }
};

/// Independent stream for (seed, stream index). Island i of a run uses
/// stream i, so a single-island run and a panmictic run with the same seed
/// draw the same numbers.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace hydrocm

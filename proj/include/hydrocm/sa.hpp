#pragma once

#include <cstdint>

#include "hydrocm/individual.hpp"
#include "hydrocm/run_result.hpp"

namespace hydrocm {

enum class CoolingSchedule { fast, geometric };

struct SaParams {
    double t0 = 0.0;  // <= 0: estimate from the problem at start
    CoolingSchedule schedule = CoolingSchedule::fast;
    double schedule_rate = 1e-4;
    double p_perturb_per_bit = 0.0;  // 0 means "4 / genome length"

    double perturb_rate(std::size_t length) const;
    void validate() const;
};

/// Number of random genomes sampled to estimate the initial temperature.
inline constexpr std::size_t kT0Samples = 100;

struct SaState {
    Individual current;
    Individual best;
    double t0 = 1.0;
    double temperature = 1.0;
    std::uint64_t step = 0;
};

/// Independent per-bit flips; p must be in (0, 1].
Genome perturb(const Genome& s, double p_per_bit, Rng& rng);

/// Boltzmann acceptance for maximisation: always accepts improvements,
/// otherwise accepts with probability exp(-(f_current - f_candidate) / T).
bool accept(double f_current, double f_candidate, double temperature, Rng& rng);

double update_temperature(double t0, std::uint64_t step, const SaParams& params);

/// Standard deviation of fitness over `kT0Samples` random genomes. Falls
/// back to 1 when the sample is flat.
double estimate_t0(const Problem& problem, Rng& rng);

/// Fresh state: estimates T0 unless params.t0 > 0, then draws the starting
/// solution. Adds the evaluations spent to `evaluations`.
SaState init_sa(const SaParams& params, const Problem& problem, Rng& rng, std::uint64_t& evaluations);

/// perturb, evaluate, accept, track best, cool. Returns evaluations (1).
std::uint64_t sa_step(SaState& state, const SaParams& params, const Problem& problem, Rng& rng);

/// The immigrant is evaluated and offered as an ordinary move at the
/// current temperature. Returns evaluations (1).
std::uint64_t inject_immigrant(SaState& state, const Genome& g, const Problem& problem, Rng& rng);

/// Best-so-far, copied.
Individual select_emigrant_sa(const SaState& state);

RunResult run_panmictic_sa(const SaParams& params, const Problem& problem, std::uint64_t budget,
                           std::uint64_t seed);

}  // namespace hydrocm

#include "hydrocm/sa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hydrocm/error.hpp"

namespace hydrocm {

double SaParams::perturb_rate(std::size_t length) const {
    if (p_perturb_per_bit > 0.0) return p_perturb_per_bit;
    return length == 0 ? 1.0 : std::min(1.0, 4.0 / static_cast<double>(length));
}

void SaParams::validate() const {
    if (!(schedule_rate > 0.0)) throw ParameterError("schedule_rate must be positive");
    if (schedule == CoolingSchedule::geometric && schedule_rate > 1.0) {
        throw ParameterError("geometric schedule_rate must be in (0, 1]");
    }
    if (!(p_perturb_per_bit >= 0.0 && p_perturb_per_bit <= 1.0)) {
        throw ParameterError("p_perturb_per_bit must be in (0, 1]");
    }
    if (std::isnan(t0)) throw ParameterError("t0 must be a number");
}

Genome perturb(const Genome& s, double p_per_bit, Rng& rng) {
    if (!(p_per_bit > 0.0 && p_per_bit <= 1.0)) throw ParameterError("perturbation rate must be in (0, 1]");
    return flip_bits(s, p_per_bit, rng);
}

bool accept(double f_current, double f_candidate, double temperature, Rng& rng) {
    if (!(temperature > 0.0)) throw ParameterError("temperature must be positive");
    if (f_candidate >= f_current) return true;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < std::exp(-(f_current - f_candidate) / temperature);
}

double update_temperature(double t0, std::uint64_t step, const SaParams& params) {
    const auto k = static_cast<double>(step);
    double t = 0.0;
    switch (params.schedule) {
        case CoolingSchedule::fast:
            t = t0 / (1.0 + params.schedule_rate * k);
            break;
        case CoolingSchedule::geometric:
            t = t0 * std::pow(params.schedule_rate, k);
            break;
    }
    return std::max(t, std::numeric_limits<double>::min());
}

double estimate_t0(const Problem& problem, Rng& rng) {
    std::vector<double> samples;
    samples.reserve(kT0Samples);
    for (std::size_t i = 0; i < kT0Samples; ++i) {
        samples.push_back(problem.evaluate(Genome::random(problem.genome_length(), rng)));
    }
    double mean = 0.0;
    for (double f : samples) mean += f;
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (double f : samples) ss += (f - mean) * (f - mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    return sd > 0.0 ? sd : 1.0;
}

SaState init_sa(const SaParams& params, const Problem& problem, Rng& rng, std::uint64_t& evaluations) {
    params.validate();
    SaState state;
    if (params.t0 > 0.0) {
        state.t0 = params.t0;
    } else {
        state.t0 = estimate_t0(problem, rng);
        evaluations += kT0Samples;
    }
    state.temperature = state.t0;
    state.current = Individual::evaluated(Genome::random(problem.genome_length(), rng), problem);
    ++evaluations;
    state.best = state.current;
    return state;
}

std::uint64_t sa_step(SaState& state, const SaParams& params, const Problem& problem, Rng& rng) {
    Genome candidate = perturb(state.current.genome, params.perturb_rate(state.current.genome.size()), rng);
    const double f = problem.evaluate(candidate);
    if (accept(state.current.fitness, f, state.temperature, rng)) {
        state.current = Individual{std::move(candidate), f};
        if (state.current.fitness > state.best.fitness) state.best = state.current;
    }
    ++state.step;
    state.temperature = update_temperature(state.t0, state.step, params);
    return 1;
}

std::uint64_t inject_immigrant(SaState& state, const Genome& g, const Problem& problem, Rng& rng) {
    if (g.size() != problem.genome_length()) {
        throw LengthError("immigrant length " + std::to_string(g.size()) + " != " +
                          std::to_string(problem.genome_length()));
    }
    const double f = problem.evaluate(g);
    if (accept(state.current.fitness, f, state.temperature, rng)) {
        state.current = Individual{g, f};
        if (f > state.best.fitness) state.best = state.current;
    }
    return 1;
}

Individual select_emigrant_sa(const SaState& state) { return state.best; }

RunResult run_panmictic_sa(const SaParams& params, const Problem& problem, std::uint64_t budget,
                           std::uint64_t seed) {
    if (budget == 0) throw ParameterError("evaluation budget must be positive");
    Rng rng = make_rng(seed, 0);
    RunResult result;
    result.seed = seed;

    std::uint64_t evaluations = 0;
    SaState state = init_sa(params, problem, rng, evaluations);
    double best = state.best.fitness;
    result.trace.push_back({0.0, best});
    bool success = problem.is_optimum(best);

    std::uint64_t tick = 0;
    while (!success && evaluations < budget) {
        evaluations += sa_step(state, params, problem, rng);
        ++tick;
        if (state.best.fitness > best) {
            best = state.best.fitness;
            result.trace.push_back({static_cast<double>(tick), best});
        }
        success = problem.is_optimum(best);
    }

    result.total_evaluations = evaluations;
    result.elapsed_ms = static_cast<double>(tick);
    result.best_fitness = best;
    result.success = success;
    result.per_island.push_back({"N0", evaluations, tick, 0, 0, 0});
    return result;
}

}  // namespace hydrocm

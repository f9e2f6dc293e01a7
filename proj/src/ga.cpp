#include "hydrocm/ga.hpp"

#include <algorithm>
#include <string>

#include "hydrocm/error.hpp"

namespace hydrocm {

GaParams GaParams::defaults_for(std::size_t length) {
    GaParams p;
    p.p_mutation_per_bit = length == 0 ? 0.0 : 4.0 / static_cast<double>(length);
    return p;
}

double GaParams::mutation_rate(std::size_t length) const {
    if (p_mutation_per_bit > 0.0) return p_mutation_per_bit;
    return length == 0 ? 0.0 : std::min(1.0, 4.0 / static_cast<double>(length));
}

void GaParams::validate() const {
    if (pop_size < 2) throw ParameterError("pop_size must be at least 2");
    if (tournament_size < 1) throw ParameterError("tournament_size must be at least 1");
    if (!(p_crossover >= 0.0 && p_crossover <= 1.0)) throw ParameterError("p_crossover must be in [0, 1]");
    if (!(p_mutation_per_bit >= 0.0 && p_mutation_per_bit <= 1.0)) {
        throw ParameterError("p_mutation_per_bit must be in [0, 1]");
    }
}

std::size_t Population::best_index() const {
    if (members.empty()) throw ParameterError("empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].fitness > members[best].fitness) best = i;
    }
    return best;
}

std::size_t Population::worst_index() const {
    if (members.empty()) throw ParameterError("empty population");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].fitness < members[worst].fitness) worst = i;
    }
    return worst;
}

Population init_population(const GaParams& params, const Problem& problem, Rng& rng) {
    params.validate();
    Population pop;
    pop.members.reserve(params.pop_size);
    for (std::size_t i = 0; i < params.pop_size; ++i) {
        pop.members.push_back(Individual::evaluated(Genome::random(problem.genome_length(), rng), problem));
    }
    return pop;
}

const Individual& tournament_select(const Population& pop, std::size_t tournament_size, Rng& rng) {
    if (pop.members.empty()) throw ParameterError("tournament on empty population");
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::size_t winner = pick(rng);
    for (std::size_t i = 1; i < tournament_size; ++i) {
        std::size_t challenger = pick(rng);
        if (pop.members[challenger].fitness > pop.members[winner].fitness) winner = challenger;
    }
    return pop.members[winner];
}

Genome one_point_crossover(const Genome& a, const Genome& b, double p_crossover, Rng& rng) {
    if (a.size() != b.size()) throw LengthError("crossover parents differ in length");
    if (a.size() < 2) return a;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (!(coin(rng) < p_crossover)) return a;
    std::uniform_int_distribution<std::size_t> cut_dist(1, a.size() - 1);
    const std::size_t cut = cut_dist(rng);
    Genome child = a;
    for (std::size_t i = cut; i < b.size(); ++i) child.set(i, b[i]);
    return child;
}

Genome mutate(const Genome& g, double p_per_bit, Rng& rng) { return flip_bits(g, p_per_bit, rng); }

std::uint64_t ssga_step(Population& pop, const GaParams& params, const Problem& problem, Rng& rng) {
    const Individual& mother = tournament_select(pop, params.tournament_size, rng);
    const Individual& father = tournament_select(pop, params.tournament_size, rng);
    Genome child = one_point_crossover(mother.genome, father.genome, params.p_crossover, rng);
    child = mutate(child, params.mutation_rate(child.size()), rng);
    Individual offspring = Individual::evaluated(std::move(child), problem);

    const std::size_t worst = pop.worst_index();
    if (offspring.fitness >= pop.members[worst].fitness) pop.members[worst] = std::move(offspring);
    ++pop.generation;
    return 1;
}

void immigrate(Population& pop, Individual incoming) {
    pop.members[pop.worst_index()] = std::move(incoming);
}

Individual select_emigrant(const Population& pop, Rng& rng) {
    if (pop.members.empty()) throw ParameterError("emigrant from empty population");
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    return pop.members[pick(rng)];
}

RunResult run_panmictic_ssga(const GaParams& params, const Problem& problem, std::uint64_t budget,
                             std::uint64_t seed) {
    if (budget == 0) throw ParameterError("evaluation budget must be positive");
    Rng rng = make_rng(seed, 0);
    RunResult result;
    result.seed = seed;

    Population pop = init_population(params, problem, rng);
    std::uint64_t evaluations = pop.size();
    double best = pop.best().fitness;
    result.trace.push_back({0.0, best});
    bool success = problem.is_optimum(best);

    std::uint64_t tick = 0;
    while (!success && evaluations < budget) {
        evaluations += ssga_step(pop, params, problem, rng);
        ++tick;
        const double now_best = pop.best().fitness;
        if (now_best > best) {
            best = now_best;
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

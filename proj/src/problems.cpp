#include "hydrocm/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "hydrocm/error.hpp"
#include "hydrocm/individual.hpp"

namespace hydrocm {

namespace {

constexpr std::array<double, 7> kBipolarDeception{1.000000, 0.000000, 0.360384, 0.640576,
                                                  0.360384, 0.000000, 1.000000};

}  // namespace

int unitation(std::span<const std::uint8_t> block) {
    if (block.size() != kMmdpBlockBits) {
        throw LengthError("unitation expects a 6-bit block, got " + std::to_string(block.size()));
    }
    return static_cast<int>(std::count(block.begin(), block.end(), std::uint8_t{1}));
}

double mmdp_subfunction(int ones) {
    if (ones < 0 || ones > 6) throw DomainError("unitation out of range: " + std::to_string(ones));
    return kBipolarDeception[static_cast<std::size_t>(ones)];
}

double mmdp_fitness(const Genome& g, const MmdpInstance& inst) {
    if (g.size() != inst.genome_length()) {
        throw LengthError("MMDP genome length " + std::to_string(g.size()) + " != " +
                          std::to_string(inst.genome_length()));
    }
    double total = 0.0;
    for (std::size_t block = 0; block < inst.k; ++block) {
        total += mmdp_subfunction(unitation(g.slice(block * kMmdpBlockBits, kMmdpBlockBits)));
    }
    return total;
}

double ssp_fitness(const Genome& g, const SubsetSumInstance& inst) {
    if (g.size() != inst.size()) {
        throw LengthError("SSP genome length " + std::to_string(g.size()) + " != " +
                          std::to_string(inst.size()));
    }
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i]) sum += inst.weights[i];
    }
    if (sum <= inst.capacity) return static_cast<double>(sum);
    return static_cast<double>(std::max<std::int64_t>(0, inst.capacity - (sum - inst.capacity)));
}

SubsetSumInstance generate_ssp_instance(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ParameterError("SSP instance needs at least 2 elements");
    Rng rng = make_rng(seed, 0);
    std::normal_distribution<double> gauss(5000.0, 5000.0 / 3.0);

    SubsetSumInstance inst;
    inst.weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto w = static_cast<std::int64_t>(std::llround(gauss(rng)));
        inst.weights.push_back(std::clamp<std::int64_t>(w, 0, kSspMaxWeight));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::int64_t capacity = 0;
    for (std::size_t i = 0; i < n / 2; ++i) capacity += inst.weights[order[i]];

    inst.capacity = capacity;
    inst.known_optimum = capacity;
    return inst;
}

void write_ssp_instance(std::ostream& out, const SubsetSumInstance& inst) {
    out << inst.size() << '\n' << inst.capacity << '\n' << inst.known_optimum << '\n';
    for (auto w : inst.weights) out << w << '\n';
}

SubsetSumInstance read_ssp_instance(std::istream& in) {
    auto next = [&](const char* what) {
        std::int64_t v = 0;
        if (!(in >> v)) throw ParseError(std::string("SSP instance: missing or malformed ") + what);
        return v;
    };
    std::int64_t n = next("element count");
    if (n < 2) throw ParseError("SSP instance: element count must be at least 2");
    SubsetSumInstance inst;
    inst.capacity = next("capacity");
    inst.known_optimum = next("known optimum");
    inst.weights.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        auto w = next("weight");
        if (w < 0 || w > kSspMaxWeight) {
            throw ParseError("SSP instance: weight " + std::to_string(i) + " out of [0, 10000]");
        }
        inst.weights.push_back(w);
    }
    std::int64_t total = std::accumulate(inst.weights.begin(), inst.weights.end(), std::int64_t{0});
    if (inst.capacity < 0 || inst.capacity > total) throw ParseError("SSP instance: capacity out of range");
    if (inst.known_optimum < 0 || inst.known_optimum > inst.capacity) {
        throw ParseError("SSP instance: known optimum exceeds capacity");
    }
    return inst;
}

std::size_t Problem::genome_length() const noexcept {
    return std::visit(
        [](const auto& inst) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, MmdpInstance>) {
                return inst.genome_length();
            } else {
                return inst.size();
            }
        },
        inst_);
}

double Problem::evaluate(const Genome& g) const {
    if (const auto* ssp = std::get_if<SubsetSumInstance>(&inst_)) return ssp_fitness(g, *ssp);
    return mmdp_fitness(g, std::get<MmdpInstance>(inst_));
}

double Problem::optimum() const noexcept {
    if (const auto* ssp = std::get_if<SubsetSumInstance>(&inst_)) return static_cast<double>(ssp->known_optimum);
    return std::get<MmdpInstance>(inst_).optimum();
}

bool Problem::is_optimum(double fitness) const noexcept {
    if (std::holds_alternative<SubsetSumInstance>(inst_)) return fitness >= optimum();
    return fitness >= optimum() - kOptimumEpsilon;
}

std::string Problem::name() const {
    if (const auto* ssp = std::get_if<SubsetSumInstance>(&inst_)) return "ssp" + std::to_string(ssp->size());
    return "mmdp" + std::to_string(std::get<MmdpInstance>(inst_).k);
}

bool is_optimum(double fitness, const Problem& problem) { return problem.is_optimum(fitness); }

}  // namespace hydrocm

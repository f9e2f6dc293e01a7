#include <doctest.h>

#include <cstdint>
#include <sstream>

#include <fmt/format.h>

#include "hydrocm/error.hpp"
#include "hydrocm/individual.hpp"
#include "hydrocm/problems.hpp"

using namespace hydrocm;

namespace {

Genome bits(const char* s) { return Genome::from_string(s); }

// Independent subset-sum evaluation straight from the penalty definition.
std::int64_t reflected_sum(const std::vector<std::int64_t>& w, std::int64_t c, std::uint32_t mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (mask >> i & 1u) s += w[i];
    }
    return s <= c ? s : std::max<std::int64_t>(0, 2 * c - s);
}

Genome mask_genome(std::uint32_t mask, std::size_t n) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i) g.set(i, mask >> i & 1u);
    return g;
}

const SubsetSumInstance kSmall{{3, 5, 8, 13}, 16, 16};

}  // namespace

TEST_CASE("unitation counts ones in a 6-bit block") {
    CHECK(unitation(bits("111000").bits()) == 3);
    CHECK(unitation(bits("000000").bits()) == 0);
    CHECK(unitation(bits("111111").bits()) == 6);
    CHECK_THROWS_AS(unitation(bits("11100").bits()), LengthError);
    CHECK_THROWS_AS(unitation(bits("1110001").bits()), LengthError);
}

TEST_CASE("bipolar deceptive sub-function") {
    CHECK(mmdp_subfunction(0) == 1.0);
    CHECK(mmdp_subfunction(3) == 0.640576);
    CHECK(mmdp_subfunction(2) == 0.360384);
    for (int u = 0; u <= 6; ++u) CHECK(mmdp_subfunction(u) == mmdp_subfunction(6 - u));
    CHECK_THROWS_AS(mmdp_subfunction(-1), DomainError);
    CHECK_THROWS_AS(mmdp_subfunction(7), DomainError);
}

TEST_CASE("MMDP fitness") {
    Genome ones(150);
    for (std::size_t i = 0; i < ones.size(); ++i) ones.set(i, true);
    CHECK(mmdp_fitness(ones, MmdpInstance{25}) == 25.0);
    CHECK(mmdp_fitness(bits("000000111111"), MmdpInstance{2}) == 2.0);
    CHECK(mmdp_fitness(bits("010110"), MmdpInstance{1}) == 0.640576);
    CHECK_THROWS_AS(mmdp_fitness(bits("0101100"), MmdpInstance{1}), LengthError);
}

TEST_CASE("MMDP fitness is complement-symmetric and bounded") {
    Rng rng = make_rng(11, 0);
    const MmdpInstance inst{10};
    for (int trial = 0; trial < 500; ++trial) {
        const Genome g = Genome::random(inst.genome_length(), rng);
        const double f = mmdp_fitness(g, inst);
        CHECK(f == mmdp_fitness(g.complement(), inst));
        CHECK(f >= 0.0);
        CHECK(f <= 10.0);
        bool all_saturated = true;
        for (std::size_t b = 0; b < inst.k; ++b) {
            const int u = unitation(g.slice(6 * b, 6));
            all_saturated = all_saturated && (u == 0 || u == 6);
        }
        CHECK((f == 10.0) == all_saturated);
    }
}

TEST_CASE("SSP fitness with reflected over-capacity penalty") {
    CHECK(ssp_fitness(bits("1001"), kSmall) == 16.0);
    CHECK(ssp_fitness(bits("0000"), kSmall) == 0.0);
    CHECK(ssp_fitness(bits("1111"), kSmall) == 3.0);
    CHECK_THROWS_AS(ssp_fitness(bits("100"), kSmall), LengthError);

    // Exhaustive scan: 16 is the best any mask achieves, and the oracle
    // agrees with the implementation on every mask.
    std::int64_t best = 0;
    for (std::uint32_t m = 0; m < 16; ++m) {
        const auto expected = reflected_sum(kSmall.weights, kSmall.capacity, m);
        CHECK(ssp_fitness(mask_genome(m, 4), kSmall) == static_cast<double>(expected));
        best = std::max(best, expected);
    }
    CHECK(best == 16);
}

TEST_CASE("generated SSP instances") {
    SUBCASE("deterministic per seed") {
        CHECK(generate_ssp_instance(2048, 42) == generate_ssp_instance(2048, 42));
        CHECK_FALSE(generate_ssp_instance(64, 42) == generate_ssp_instance(64, 43));
    }
    SUBCASE("weights clamped into range and capacity bounded") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto inst = generate_ssp_instance(16, seed);
            std::int64_t total = 0;
            for (auto w : inst.weights) {
                CHECK(w >= 0);
                CHECK(w <= kSspMaxWeight);
                total += w;
            }
            CHECK(inst.capacity <= total);
            CHECK(inst.known_optimum == inst.capacity);
        }
    }
    SUBCASE("brute force finds a subset summing exactly to capacity") {
        const auto inst = generate_ssp_instance(16, 5);
        bool found = false;
        for (std::uint32_t m = 0; m < (1u << 16) && !found; ++m) {
            found = reflected_sum(inst.weights, inst.capacity, m) == inst.capacity;
        }
        CHECK(found);
    }
    SUBCASE("large instance weights follow the configured Gaussian") {
        const auto inst = generate_ssp_instance(2048, 3);
        double mean = 0.0;
        for (auto w : inst.weights) mean += static_cast<double>(w);
        mean /= 2048.0;
        CHECK(mean == doctest::Approx(5000.0).epsilon(0.03));
    }
    CHECK_THROWS_AS(generate_ssp_instance(1, 0), ParameterError);
}

TEST_CASE("optimum test") {
    const Problem mmdp(MmdpInstance{25});
    CHECK(is_optimum(25.0, mmdp));
    CHECK_FALSE(is_optimum(24.639, mmdp));
    const Problem ssp(kSmall);
    CHECK(is_optimum(16.0, ssp));
    CHECK_FALSE(is_optimum(15.0, ssp));
    CHECK(ssp.genome_length() == 4);
    CHECK(mmdp.genome_length() == 150);
}

TEST_CASE("SSP instance text round trip") {
    const auto inst = generate_ssp_instance(32, 9);
    std::stringstream buf;
    write_ssp_instance(buf, inst);
    CHECK(read_ssp_instance(buf) == inst);

    std::istringstream header_only("4\n16\n16\n3\n5\n");
    CHECK_THROWS_AS(read_ssp_instance(header_only), ParseError);
    std::istringstream too_big("2\n5\n5\n3\n20000\n");
    CHECK_THROWS_AS(read_ssp_instance(too_big), ParseError);
}

TEST_CASE("flip_bits extremes") {
    Rng rng = make_rng(1, 0);
    const Genome g = bits("0110100111");
    CHECK(flip_bits(g, 0.0, rng) == g);
    CHECK(flip_bits(g, 1.0, rng) == g.complement());
    CHECK_THROWS_AS(flip_bits(g, 1.5, rng), ParameterError);
}

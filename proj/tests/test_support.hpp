#pragma once

#include <cstdint>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hydrocm/genome.hpp"
#include "hydrocm/topology.hpp"

namespace hydrocm::test {

/// SSP instance used by the desk-scale solve-rate checks (16 items, five
/// subsets hit the capacity exactly).
inline constexpr std::uint64_t kSspInstanceSeed = 13;

inline std::size_t hamming(const Genome& a, const Genome& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline Genome mask_genome(std::uint32_t mask, std::size_t n) {
    Genome g(n);
    for (std::size_t i = 0; i < n; ++i) g.set(i, mask >> i & 1u);
    return g;
}

/// True when child == a[0, cut) + b[cut, L) for some cut in [0, L].
inline bool is_prefix_suffix_join(const Genome& child, const Genome& a, const Genome& b) {
    for (std::size_t cut = 0; cut <= child.size(); ++cut) {
        bool ok = true;
        for (std::size_t i = 0; i < child.size() && ok; ++i) ok = child[i] == (i < cut ? a[i] : b[i]);
        if (ok) return true;
    }
    return false;
}

/// Random valid hydrocarbon: a carbon skeleton tree with random bond orders,
/// an optional ring-closing bond, and hydrogens on some of the free valences.
inline TopologySpec random_hydrocarbon(Rng& rng) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    TopologySpec spec;
    std::vector<int> free;
    const int carbons = uniform(1, 6);
    for (int c = 0; c < carbons; ++c) {
        std::vector<int> open;
        for (int j = 0; j < c; ++j) {
            if (free[static_cast<std::size_t>(j)] > 0) open.push_back(j);
        }
        if (c > 0 && open.empty()) break;
        spec.nodes.push_back({"C" + std::to_string(c), Atom::carbon,
                              uniform(0, 1) ? Algorithm::ssga : Algorithm::sa, 1.0});
        free.push_back(4);
        if (c == 0) continue;
        const int j = open[static_cast<std::size_t>(uniform(0, static_cast<int>(open.size()) - 1))];
        const int order = uniform(1, std::min(3, free[static_cast<std::size_t>(j)]));
        spec.bonds.push_back({spec.nodes[static_cast<std::size_t>(j)].id, spec.nodes.back().id, order});
        free[static_cast<std::size_t>(j)] -= order;
        free.back() -= order;
    }
    const int n = static_cast<int>(spec.nodes.size());
    if (n >= 3 && uniform(0, 1)) {
        const int a = uniform(0, n - 1);
        const int b = uniform(0, n - 1);
        const auto& ida = spec.nodes[static_cast<std::size_t>(a)].id;
        const auto& idb = spec.nodes[static_cast<std::size_t>(b)].id;
        const bool bonded = std::any_of(spec.bonds.begin(), spec.bonds.end(), [&](const BondSpec& bond) {
            return (bond.a == ida && bond.b == idb) || (bond.a == idb && bond.b == ida);
        });
        if (a != b && !bonded && free[static_cast<std::size_t>(a)] > 0 && free[static_cast<std::size_t>(b)] > 0) {
            spec.bonds.push_back({ida, idb, 1});
            --free[static_cast<std::size_t>(a)];
            --free[static_cast<std::size_t>(b)];
        }
    }
    int h = 0;
    for (int c = 0; c < n; ++c) {
        const int count = uniform(0, free[static_cast<std::size_t>(c)]);
        for (int k = 0; k < count; ++k) {
            const std::string id = "H" + std::to_string(h++);
            spec.nodes.push_back({id, Atom::hydrogen, uniform(0, 1) ? Algorithm::ssga : Algorithm::sa, 0.35});
            spec.bonds.push_back({spec.nodes[static_cast<std::size_t>(c)].id, id, 1});
        }
    }
    return spec;
}

}  // namespace hydrocm::test

#include <numeric>
#include <span>

namespace hydrocm::test {

struct PermutationP {
    double u = 0.0;
    double p = 0.0;
};

/// Two-sided Mann-Whitney p-value by enumerating every distinct labelling of
/// the pooled sample, with U counted pairwise (ties 1/2). Independent of the
/// rank-sum implementation.
inline PermutationP permutation_mann_whitney(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    auto pairwise_u = [&](const std::vector<int>& labels) {
        double u = 0.0;
        for (std::size_t i = 0; i < pooled.size(); ++i) {
            if (labels[i] != 0) continue;
            for (std::size_t j = 0; j < pooled.size(); ++j) {
                if (labels[j] != 1) continue;
                u += pooled[i] > pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
            }
        }
        return u;
    };
    std::vector<int> labels(pooled.size(), 1);
    std::fill(labels.begin(), labels.begin() + static_cast<long>(a.size()), 0);
    const double observed = pairwise_u(labels);
    const double mid = static_cast<double>(a.size() * b.size()) / 2.0;
    std::uint64_t extreme = 0;
    std::uint64_t total = 0;
    std::vector<int> perm(pooled.size(), 1);
    std::fill(perm.begin(), perm.begin() + static_cast<long>(a.size()), 0);
    do {
        ++total;
        if (std::abs(pairwise_u(perm) - mid) >= std::abs(observed - mid)) ++extreme;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {observed, static_cast<double>(extreme) / static_cast<double>(total)};
}

}  // namespace hydrocm::test

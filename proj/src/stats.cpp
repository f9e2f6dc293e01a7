#include "hydrocm/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "hydrocm/error.hpp"

namespace hydrocm {

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) throw ParameterError("mean/std of an empty sample");
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() == 1) return {mean, 0.0, true};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0)), false};
}

SpeedupResult speedup(const SampleSet& sequential, const SampleSet& parallel) {
    SpeedupResult r;
    r.mean_sequential = mean_std(sequential).mean;
    r.mean_parallel = mean_std(parallel).mean;
    if (r.mean_parallel == 0.0) throw DegenerateError("speedup: parallel mean time is zero");
    r.speedup = r.mean_sequential / r.mean_parallel;
    return r;
}

std::string format_speedup(double value) { return fmt::format("{:.2f}", value); }

namespace {

struct Ranked {
    std::vector<double> ranks;  // midranks of the pooled sample, a first then b
    double tie_term = 0.0;      // sum of t^3 - t over tie groups
};

Ranked midranks(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::vector<std::size_t> order(pooled.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return pooled[x] < pooled[y]; });

    Ranked out;
    out.ranks.resize(pooled.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
        const auto t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

void check_samples(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ParameterError("Mann-Whitney U needs two non-empty samples");
}

double u_statistic(const Ranked& r, std::size_t na) {
    const double rank_sum = std::accumulate(r.ranks.begin(), r.ranks.begin() + static_cast<long>(na), 0.0);
    const auto n = static_cast<double>(na);
    return rank_sum - n * (n + 1.0) / 2.0;
}

bool all_identical(std::span<const double> a, std::span<const double> b) {
    const double v = a.front();
    return std::all_of(a.begin(), a.end(), [v](double x) { return x == v; }) &&
           std::all_of(b.begin(), b.end(), [v](double x) { return x == v; });
}

UTestResult normal_approx(const Ranked& r, std::size_t na, std::size_t nb, Alternative alt) {
    UTestResult out;
    out.method = UTestMethod::normal_approx;
    out.u = u_statistic(r, na);
    const auto n1 = static_cast<double>(na);
    const auto n2 = static_cast<double>(nb);
    const double n = n1 + n2;
    const double mu = n1 * n2 / 2.0;
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));
    if (!(var > 0.0)) {
        out.p = 1.0;
        out.degenerate = true;
        return out;
    }
    const double sigma = std::sqrt(var);
    switch (alt) {
        case Alternative::two_sided: {
            const double z = std::max(0.0, std::abs(out.u - mu) - 0.5) / sigma;
            out.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
            break;
        }
        case Alternative::greater:
            out.p = 0.5 * std::erfc(((out.u - mu - 0.5) / sigma) / std::sqrt(2.0));
            break;
        case Alternative::less:
            out.p = 0.5 * std::erfc(-((out.u - mu + 0.5) / sigma) / std::sqrt(2.0));
            break;
    }
    return out;
}

}  // namespace

UTestResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b, Alternative alternative) {
    check_samples(a, b);
    if (all_identical(a, b)) {
        return {static_cast<double>(a.size() * b.size()) / 2.0, 1.0, UTestMethod::normal_approx, true};
    }
    return normal_approx(midranks(a, b), a.size(), b.size(), alternative);
}

UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, Alternative alternative) {
    check_samples(a, b);
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    if (na > kExactUThreshold || nb > kExactUThreshold) return mann_whitney_u_normal(a, b, alternative);
    if (all_identical(a, b)) {
        return {static_cast<double>(na * nb) / 2.0, 1.0, UTestMethod::exact, true};
    }

    const Ranked r = midranks(a, b);
    UTestResult out;
    out.method = UTestMethod::exact;
    out.u = u_statistic(r, na);
    const double offset = static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;
    const double mu = static_cast<double>(na * nb) / 2.0;
    const double observed_dev = std::abs(out.u - mu);

    // Every assignment of na of the pooled ranks to sample a is equally
    // likely under the null.
    const std::size_t total_n = na + nb;
    std::uint64_t extreme = 0;
    std::uint64_t total = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << total_n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != na) continue;
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < total_n; ++i) {
            if (mask & (std::uint32_t{1} << i)) rank_sum += r.ranks[i];
        }
        const double u = rank_sum - offset;
        ++total;
        switch (alternative) {
            case Alternative::two_sided:
                if (std::abs(u - mu) >= observed_dev) ++extreme;
                break;
            case Alternative::greater:
                if (u >= out.u) ++extreme;
                break;
            case Alternative::less:
                if (u <= out.u) ++extreme;
                break;
        }
    }
    out.p = static_cast<double>(extreme) / static_cast<double>(total);
    return out;
}

std::size_t median_trace_index(std::span<const RunResult> runs) {
    if (runs.empty()) throw ParameterError("median trace of no runs");
    std::vector<std::size_t> order(runs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
        const auto& a = runs[x];
        const auto& b = runs[y];
        if (a.success != b.success) return a.success;
        if (a.success) return a.elapsed_ms < b.elapsed_ms;
        return a.best_fitness > b.best_fitness;
    });
    return order[(order.size() - 1) / 2];
}

const std::vector<TracePoint>& median_trace(std::span<const RunResult> runs) {
    return runs[median_trace_index(runs)].trace;
}

ReportRow summarize_experiment(std::span<const RunResult> runs, std::string algorithm, std::string problem) {
    ReportRow row;
    row.algorithm = std::move(algorithm);
    row.problem = std::move(problem);
    row.runs = runs.size();
    std::vector<double> evaluations;
    std::vector<double> times;
    for (const auto& run : runs) {
        if (!run.success) continue;
        evaluations.push_back(static_cast<double>(run.total_evaluations));
        times.push_back(run.elapsed_ms);
    }
    row.successes = evaluations.size();
    row.success_rate = runs.empty() ? 0.0 : static_cast<double>(row.successes) / static_cast<double>(row.runs);
    if (!evaluations.empty()) {
        row.evaluations = mean_std(evaluations);
        row.time_ms = mean_std(times);
    }
    return row;
}

}  // namespace hydrocm

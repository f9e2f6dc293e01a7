#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hydrocm/run_result.hpp"

namespace hydrocm {

struct SampleSet {
    std::vector<double> values;
    std::string label;
};

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;      // sample standard deviation (n - 1)
    bool degenerate = false;  // single value: std reported as 0
};

MeanStd mean_std(std::span<const double> values);
inline MeanStd mean_std(const SampleSet& s) { return mean_std(s.values); }

struct SpeedupResult {
    double mean_sequential = 0.0;
    double mean_parallel = 0.0;
    double speedup = 0.0;
};

SpeedupResult speedup(const SampleSet& sequential, const SampleSet& parallel);

/// Two-decimal presentation used in reports ("3.01").
std::string format_speedup(double value);

enum class UTestMethod { exact, normal_approx };
enum class Alternative { two_sided, greater, less };

struct UTestResult {
    double u = 0.0;  // pairs (a_i, b_j) with a_i > b_j, ties count 1/2
    double p = 1.0;
    UTestMethod method = UTestMethod::exact;
    bool degenerate = false;  // every value identical
};

inline constexpr std::size_t kExactUThreshold = 8;

/// Mann-Whitney U with midranks. Exact permutation p-value when both
/// samples have at most kExactUThreshold values, otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
/// `greater` tests whether a tends to exceed b.
UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           Alternative alternative = Alternative::two_sided);

/// Forces the normal approximation regardless of size.
UTestResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b,
                                  Alternative alternative = Alternative::two_sided);

/// Index of the median run: successful runs ordered by finish time, then
/// failed runs by decreasing best fitness; lower median for even counts.
std::size_t median_trace_index(std::span<const RunResult> runs);
const std::vector<TracePoint>& median_trace(std::span<const RunResult> runs);

struct ReportRow {
    std::string algorithm;
    std::string problem;
    std::size_t runs = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    /// Aggregates over successful runs only; empty when none succeeded.
    std::optional<MeanStd> evaluations;
    std::optional<MeanStd> time_ms;
};

ReportRow summarize_experiment(std::span<const RunResult> runs, std::string algorithm,
                               std::string problem);

}  // namespace hydrocm

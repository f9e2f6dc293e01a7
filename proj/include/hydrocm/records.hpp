#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hydrocm/run_result.hpp"

namespace hydrocm {

inline constexpr const char* kRecordHeader = "seed,evaluations,elapsed_ms,best,success";

/// One row per run: seed, evaluations, elapsed_ms, best, success.
void write_records(std::ostream& out, std::span<const RunResult> runs);

/// Parses a record file. Rows carry no trace or per-island data. Throws
/// ParseError naming the offending line.
std::vector<RunResult> read_records(std::istream& in);

/// `time_ms,fitness` per line.
void write_trace(std::ostream& out, std::span<const TracePoint> trace);
std::vector<TracePoint> read_trace(std::istream& in);

}  // namespace hydrocm

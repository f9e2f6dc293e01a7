#include "hydrocm/records.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "hydrocm/error.hpp"

namespace hydrocm {

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    text = trim(text);
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

void write_records(std::ostream& out, std::span<const RunResult> runs) {
    out << kRecordHeader << '\n';
    for (const auto& r : runs) {
        out << fmt::format("{},{},{},{},{}\n", r.seed, r.total_evaluations, r.elapsed_ms, r.best_fitness,
                           r.success ? 1 : 0);
    }
}

std::vector<RunResult> read_records(std::istream& in) {
    std::vector<RunResult> runs;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != kRecordHeader) {
                throw ParseError(fmt::format("line {}: expected header '{}'", line_no, kRecordHeader));
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(text);
        if (fields.size() != 5) {
            throw ParseError(fmt::format("line {}: expected 5 fields, got {}", line_no, fields.size()));
        }
        RunResult r;
        int success = 0;
        if (!parse_number(fields[0], r.seed)) throw ParseError(fmt::format("line {}: bad seed", line_no));
        if (!parse_number(fields[1], r.total_evaluations)) {
            throw ParseError(fmt::format("line {}: bad evaluations", line_no));
        }
        if (!parse_number(fields[2], r.elapsed_ms) || r.elapsed_ms < 0.0) {
            throw ParseError(fmt::format("line {}: bad elapsed_ms", line_no));
        }
        if (!parse_number(fields[3], r.best_fitness)) throw ParseError(fmt::format("line {}: bad best", line_no));
        if (!parse_number(fields[4], success) || (success != 0 && success != 1)) {
            throw ParseError(fmt::format("line {}: success must be 0 or 1", line_no));
        }
        r.success = success == 1;
        runs.push_back(std::move(r));
    }
    if (!header_seen) throw ParseError("empty record file");
    return runs;
}

void write_trace(std::ostream& out, std::span<const TracePoint> trace) {
    for (const auto& p : trace) out << fmt::format("{},{}\n", p.time_ms, p.fitness);
}

std::vector<TracePoint> read_trace(std::istream& in) {
    std::vector<TracePoint> trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto fields = split_csv(text);
        TracePoint p;
        if (fields.size() != 2 || !parse_number(fields[0], p.time_ms) || !parse_number(fields[1], p.fitness)) {
            throw ParseError(fmt::format("trace line {}: expected time_ms,fitness", line_no));
        }
        trace.push_back(p);
    }
    return trace;
}

}  // namespace hydrocm

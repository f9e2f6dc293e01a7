#include "hydrocm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hydrocm/error.hpp"
#include "hydrocm/experiment.hpp"
#include "hydrocm/records.hpp"
#include "hydrocm/stats.hpp"

namespace hydrocm::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

std::string cell(const std::optional<MeanStd>& v, bool want_std) {
    if (!v) return "*";
    return fmt::format("{:.2f}", want_std ? v->std : v->mean);
}

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> budget;
    bool single_processor = false;
    std::string out = "runs.csv";
};

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = load_experiment_config(opt.config);
        if (opt.seed) cfg.master_seed = *opt.seed;
        if (opt.reps) cfg.repetitions = *opt.reps;
        if (opt.budget) cfg.budget = *opt.budget;
        if (opt.single_processor) cfg.single_processor = true;
        if (opt.mode) {
            if (*opt.mode == "virtual") {
                cfg.mode = TimeMode::virtual_time;
            } else if (*opt.mode == "wall") {
                cfg.mode = TimeMode::wall_clock;
            } else {
                throw ConfigError("mode", "expected 'virtual' or 'wall'");
            }
        }
        validate_experiment_config(cfg);
    } catch (const ConfigError& e) {
        err << "error: bad config field " << e.what() << '\n';
        return kInputError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }

    Problem problem = [&] {
        try {
            return build_problem(cfg.problem);
        } catch (const ParseError& e) {
            throw ConfigError("problem.instance", e.what());
        }
    }();
    const auto runs = run_experiments(cfg, problem);

    const fs::path records_path(opt.out);
    if (records_path.has_parent_path()) fs::create_directories(records_path.parent_path());
    {
        auto f = open_out(records_path);
        write_records(f, runs);
    }
    const fs::path trace_dir = records_path.string() + ".traces";
    fs::create_directories(trace_dir);
    for (const auto& run : runs) {
        auto f = open_out(trace_dir / fmt::format("seed_{}.trace", run.seed));
        write_trace(f, run.trace);
    }
    {
        auto f = open_out(records_path.string() + ".median.trace");
        write_trace(f, median_trace(runs));
    }
    if (const auto* ssp = std::get_if<SubsetSumInstance>(&problem.instance())) {
        auto f = open_out(records_path.string() + ".instance");
        write_ssp_instance(f, *ssp);
    }

    const auto row = summarize_experiment(runs, setup_name(cfg.setup), problem.name());
    out << "algorithm,problem,runs,success_rate,eval_mean,eval_std,time_mean,time_std\n";
    out << fmt::format("{},{},{},{:.2f},{},{},{},{}\n", row.algorithm, row.problem, row.runs, row.success_rate,
                       cell(row.evaluations, false), cell(row.evaluations, true), cell(row.time_ms, false),
                       cell(row.time_ms, true));
    return kOk;
}

std::vector<RunResult> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    try {
        return read_records(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<double> successful(const std::vector<RunResult>& runs, bool time) {
    std::vector<double> v;
    for (const auto& r : runs) {
        if (r.success) v.push_back(time ? r.elapsed_ms : static_cast<double>(r.total_evaluations));
    }
    return v;
}

int cmd_report(const std::vector<std::string>& files, const std::vector<std::string>& sequential,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::vector<std::vector<RunResult>> sets;
    std::vector<std::vector<RunResult>> seq_sets;
    try {
        for (const auto& f : files) sets.push_back(load_records(f));
        for (const auto& f : sequential) seq_sets.push_back(load_records(f));
    } catch (const ParseError& e) {
        err << "error: malformed record: " << e.what() << '\n';
        return kInputError;
    }

    std::ostringstream report;
    const bool with_speedup = !seq_sets.empty();
    report << "label,runs,success_rate,eval_mean,eval_std,time_mean,time_std" << (with_speedup ? ",speedup" : "")
           << '\n';
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto label = fs::path(files[i]).stem().string();
        const auto row = summarize_experiment(sets[i], label, "");
        report << fmt::format("{},{},{:.2f},{},{},{},{}", label, row.runs, row.success_rate,
                              cell(row.evaluations, false), cell(row.evaluations, true), cell(row.time_ms, false),
                              cell(row.time_ms, true));
        if (with_speedup) {
            std::string s = "*";
            if (i < seq_sets.size()) {
                const auto seq_times = successful(seq_sets[i], true);
                const auto par_times = successful(sets[i], true);
                if (!seq_times.empty() && !par_times.empty()) {
                    try {
                        s = format_speedup(speedup({seq_times, "sequential"}, {par_times, label}).speedup);
                    } catch (const DegenerateError&) {
                    }
                }
            }
            report << ',' << s;
        }
        report << '\n';
    }

    if (sets.size() >= 2) {
        report << "\na,b,metric,n_a,n_b,U,p,method\n";
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                for (bool time : {false, true}) {
                    const auto a = successful(sets[i], time);
                    const auto b = successful(sets[j], time);
                    const auto la = fs::path(files[i]).stem().string();
                    const auto lb = fs::path(files[j]).stem().string();
                    const char* metric = time ? "time_ms" : "evaluations";
                    if (a.empty() || b.empty()) {
                        report << fmt::format("{},{},{},{},{},*,*,*\n", la, lb, metric, a.size(), b.size());
                        continue;
                    }
                    const auto u = mann_whitney_u(a, b);
                    report << fmt::format("{},{},{},{},{},{},{:.4g},{}\n", la, lb, metric, a.size(), b.size(), u.u,
                                          u.p, u.method == UTestMethod::exact ? "exact" : "normal");
                }
            }
        }
    }

    out << report.str();
    if (!out_path.empty()) {
        auto f = open_out(out_path);
        f << report.str();
    }
    return kOk;
}

int cmd_validate_topology(const std::string& path, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot read '" << path << "'\n";
        return kIoError;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    TopologySpec spec;
    try {
        spec = parse_topology(buffer.str());
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    const auto violations = validate_hydrocarbon(spec);
    if (violations.empty()) {
        out << "valid\n";
        return kOk;
    }
    for (const auto& v : violations) out << v << '\n';
    return kValidationFindings;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heterogeneous island-model search (Ethane / HydroCM) experiments"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run repeated experiments and write run records and traces");
    run->add_option("--config", run_opt.config, "Experiment config (JSON)")->required();
    run->add_option("--seed", run_opt.seed, "Master seed (repetition i uses seed + i)");
    run->add_option("--reps", run_opt.reps, "Number of repetitions");
    run->add_option("--mode", run_opt.mode, "virtual | wall");
    run->add_option("--budget", run_opt.budget, "Evaluation budget per run");
    run->add_flag("--single-processor", run_opt.single_processor, "Time-share all islands on one processor");
    run->add_option("--out", run_opt.out, "Record file path");

    std::vector<std::string> report_files;
    std::vector<std::string> sequential_files;
    std::string report_out;
    auto* report = app.add_subcommand("report", "Summarise record files");
    report->add_option("records", report_files, "Record files")->required();
    report->add_option("--sequential", sequential_files,
                       "Single-processor record file paired with the record file at the same position");
    report->add_option("--out", report_out, "Also write the report here");

    std::string topology_path;
    auto* validate = app.add_subcommand("validate-topology", "Check hydrocarbon valence rules");
    validate->add_option("topology", topology_path, "Topology file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*run) return cmd_run(run_opt, out, err);
        if (*report) return cmd_report(report_files, sequential_files, report_out, out, err);
        if (*validate) return cmd_validate_topology(topology_path, out, err);
    } catch (const ConfigError& e) {
        err << "error: bad config field " << e.what() << '\n';
        return kInputError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kInputError;
}

}  // namespace hydrocm::cli

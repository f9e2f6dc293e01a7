#include "hydrocm/engine.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <mutex>
#include <thread>

#include "hydrocm/channel.hpp"
#include "hydrocm/error.hpp"
#include "hydrocm/scheduler.hpp"

namespace hydrocm {

namespace {

using Clock = std::chrono::steady_clock;

/// One sub-algorithm instance bound to a node.
class Island {
public:
    virtual ~Island() = default;
    virtual std::uint64_t init(const Problem& problem, Rng& rng) = 0;
    virtual std::uint64_t step(const Problem& problem, Rng& rng) = 0;
    virtual double best_fitness() const = 0;
    virtual Individual emigrant(Rng& rng) const = 0;
    /// Returns evaluations spent absorbing the immigrant.
    virtual std::uint64_t receive(const MigrationMessage& msg, const Problem& problem, Rng& rng) = 0;
};

class GaIsland final : public Island {
public:
    explicit GaIsland(const GaParams& params) : params_(params) {}

    std::uint64_t init(const Problem& problem, Rng& rng) override {
        pop_ = init_population(params_, problem, rng);
        return pop_.size();
    }
    std::uint64_t step(const Problem& problem, Rng& rng) override { return ssga_step(pop_, params_, problem, rng); }
    double best_fitness() const override { return pop_.best().fitness; }
    Individual emigrant(Rng& rng) const override { return select_emigrant(pop_, rng); }
    std::uint64_t receive(const MigrationMessage& msg, const Problem&, Rng&) override {
        immigrate(pop_, Individual{msg.genome, msg.fitness});
        return 0;
    }

private:
    GaParams params_;
    Population pop_;
};

class SaIsland final : public Island {
public:
    explicit SaIsland(const SaParams& params) : params_(params) {}

    std::uint64_t init(const Problem& problem, Rng& rng) override {
        std::uint64_t evaluations = 0;
        state_ = init_sa(params_, problem, rng, evaluations);
        return evaluations;
    }
    std::uint64_t step(const Problem& problem, Rng& rng) override { return sa_step(state_, params_, problem, rng); }
    double best_fitness() const override { return state_.best.fitness; }
    Individual emigrant(Rng&) const override { return select_emigrant_sa(state_); }
    std::uint64_t receive(const MigrationMessage& msg, const Problem& problem, Rng& rng) override {
        return inject_immigrant(state_, msg.genome, problem, rng);
    }

private:
    SaParams params_;
    SaState state_;
};

struct Node {
    std::unique_ptr<Island> island;
    Rng rng;
    IslandStats stats;
    std::vector<std::size_t> outgoing;  // channel indices
    std::vector<std::size_t> incoming;
    std::size_t interval = 1;  // iterations between migration points
    std::uint64_t seq = 0;
};

/// Shared state of one run.
class Runtime {
public:
    Runtime(const RunConfig& config, const Problem& problem) : config_(config), problem_(problem) {
        if (config.evaluation_budget == 0) throw ParameterError("evaluation budget must be positive");
        if (config.migration_frequency == 0) throw ParameterError("migration frequency must be at least 1");
        plan_ = compile_channels(config.topology, config.multiplicity);

        for (std::size_t c = 0; c < plan_.channels.size(); ++c) {
            channels_.push_back(std::make_unique<MigrationChannel>());
        }
        const auto& specs = config.topology.nodes;
        nodes_.resize(specs.size());
        for (std::size_t i = 0; i < specs.size(); ++i) {
            Node& node = nodes_[i];
            if (specs[i].algorithm == Algorithm::ssga) {
                node.island = std::make_unique<GaIsland>(config.ga);
            } else {
                node.island = std::make_unique<SaIsland>(config.sa);
            }
            node.rng = make_rng(config.seed, i);
            node.stats.id = specs[i].id;
        }
        std::vector<std::size_t> max_multiplier(specs.size(), 1);
        for (std::size_t c = 0; c < plan_.channels.size(); ++c) {
            const auto& ch = plan_.channels[c];
            nodes_[ch.src].outgoing.push_back(c);
            nodes_[ch.dst].incoming.push_back(c);
            max_multiplier[ch.src] = std::max(max_multiplier[ch.src], ch.rate_multiplier);
            max_multiplier[ch.dst] = std::max(max_multiplier[ch.dst], ch.rate_multiplier);
        }
        for (std::size_t i = 0; i < specs.size(); ++i) {
            nodes_[i].interval = std::max<std::size_t>(1, config.migration_frequency / max_multiplier[i]);
        }
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    StopSignal& stop() noexcept { return stop_; }

    /// All islands build their initial state at time 0.
    void init_all() {
        for (auto& node : nodes_) {
            const auto evals = node.island->init(problem_, node.rng);
            node.stats.evaluations += evals;
            total_evaluations_ += evals;
        }
        std::lock_guard lock(best_mutex_);
        for (auto& node : nodes_) record_best_locked(node.island->best_fitness(), 0.0);
    }

    /// Reserves budget for one iteration; false once the budget is spent.
    bool reserve_iteration() {
        if (total_evaluations_.fetch_add(1, std::memory_order_acq_rel) >= config_.evaluation_budget) {
            total_evaluations_.fetch_sub(1, std::memory_order_acq_rel);
            terminate_broadcast(stop_);
            return false;
        }
        return true;
    }

    /// One iteration of node `i` (budget already reserved), followed by a
    /// migration exchange when a migration point is reached.
    void iterate(std::size_t i, double now_ms) {
        Node& node = nodes_[i];
        const auto evals = node.island->step(problem_, node.rng);
        node.stats.evaluations += evals;
        if (evals > 1) total_evaluations_ += evals - 1;
        ++node.stats.iterations;
        if (node.stats.iterations % node.interval == 0) migrate(node, i);
        observe(node, now_ms);
    }

    RunResult finish(double elapsed_ms) {
        RunResult result;
        result.seed = config_.seed;
        result.elapsed_ms = elapsed_ms;
        result.success = success_;
        result.trace = trace_;
        double best = best_;
        for (const auto& channel : channels_) {
            for (const auto& msg : channel->snapshot()) best = std::max(best, msg.fitness);
        }
        result.best_fitness = best;
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            nodes_[plan_.channels[c].dst].stats.dropped += channels_[c]->dropped();
        }
        for (const auto& node : nodes_) {
            result.per_island.push_back(node.stats);
            result.total_evaluations += node.stats.evaluations;
        }
        return result;
    }

private:
    void migrate(Node& node, std::size_t i) {
        const auto iteration = node.stats.iterations;
        for (auto c : node.outgoing) {
            const auto& ch = plan_.channels[c];
            const auto every = std::max<std::size_t>(1, config_.migration_frequency / ch.rate_multiplier);
            if (iteration % every != 0) continue;
            for (std::size_t k = 0; k < ch.batch_size * config_.migration_count; ++k) {
                Individual emigrant = node.island->emigrant(node.rng);
                channels_[c]->send({std::move(emigrant.genome), emigrant.fitness, i, node.seq++});
                ++node.stats.emigrants_sent;
            }
        }
        for (auto c : node.incoming) {
            for (const auto& msg : channels_[c]->poll()) {
                const auto evals = node.island->receive(msg, problem_, node.rng);
                node.stats.evaluations += evals;
                total_evaluations_ += evals;
                ++node.stats.immigrants_received;
            }
        }
    }

    void observe(const Node& node, double now_ms) {
        const double f = node.island->best_fitness();
        std::lock_guard lock(best_mutex_);
        record_best_locked(f, now_ms);
    }

    void record_best_locked(double f, double now_ms) {
        if (trace_.empty() || f > best_) {
            best_ = f;
            if (!trace_.empty() && trace_.back().time_ms == now_ms) {
                trace_.back().fitness = f;
            } else {
                trace_.push_back({now_ms, f});
            }
        }
        if (problem_.is_optimum(f)) {
            success_ = true;
            terminate_broadcast(stop_);
        }
    }

    const RunConfig& config_;
    const Problem& problem_;
    ChannelPlan plan_;
    std::vector<std::unique_ptr<MigrationChannel>> channels_;
    std::vector<Node> nodes_;
    StopSignal stop_;
    std::atomic<std::uint64_t> total_evaluations_{0};

    std::mutex best_mutex_;
    double best_ = 0.0;
    bool success_ = false;
    std::vector<TracePoint> trace_;
};

std::vector<double> effective_speeds(const RunConfig& config) {
    std::vector<double> speeds;
    const auto n = config.topology.nodes.size();
    for (const auto& node : config.topology.nodes) {
        speeds.push_back(config.single_processor ? 1.0 / static_cast<double>(n) : node.speed_factor);
    }
    return speeds;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Deterministic interleaving on the calling thread. Timestamps come from
/// the virtual clock, or from the wall clock when `wall` is set.
RunResult run_interleaved(Runtime& rt, const std::vector<double>& speeds, bool wall) {
    const auto start = Clock::now();
    rt.init_all();
    VirtualScheduler scheduler(speeds);
    double last_ms = 0.0;  // time of the last iteration executed
    while (!rt.stop().raised()) {
        const auto& batch = scheduler.next_tick();
        for (auto i : batch) {
            if (rt.stop().raised() || !rt.reserve_iteration()) break;
            last_ms = wall ? ms_since(start) : static_cast<double>(scheduler.now());
            rt.iterate(i, last_ms);
        }
    }
    return rt.finish(wall ? ms_since(start) : last_ms);
}

/// One thread per island; slow islands sleep in proportion to the time
/// they spend computing.
RunResult run_threaded(Runtime& rt, const std::vector<double>& speeds, bool throttle) {
    const auto start = Clock::now();
    rt.init_all();
    std::vector<std::thread> threads;
    threads.reserve(rt.size());
    for (std::size_t i = 0; i < rt.size(); ++i) {
        threads.emplace_back([&rt, &speeds, i, start, throttle] {
            const double slowdown = speeds[i] < 1.0 ? 1.0 / speeds[i] - 1.0 : 0.0;
            std::chrono::duration<double> debt{0.0};
            while (!rt.stop().raised() && rt.reserve_iteration()) {
                const auto t0 = Clock::now();
                rt.iterate(i, ms_since(start));
                if (throttle && slowdown > 0.0) {
                    debt += (Clock::now() - t0) * slowdown;
                    if (debt >= std::chrono::milliseconds(1)) {
                        std::this_thread::sleep_for(std::chrono::duration_cast<Clock::duration>(debt));
                        debt = std::chrono::duration<double>{0.0};
                    }
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    return rt.finish(ms_since(start));
}

}  // namespace

RunResult run_experiment(const RunConfig& config, const Problem& problem) {
    Runtime rt(config, problem);
    const auto speeds = effective_speeds(config);
    if (config.mode == TimeMode::virtual_time) return run_interleaved(rt, speeds, false);
    if (config.single_processor) return run_interleaved(rt, speeds, true);
    return run_threaded(rt, speeds, config.throttle);
}

}  // namespace hydrocm

#include "qrepsim/strategies.hpp"

#include <algorithm>
#include <chrono>

namespace qrepsim {

namespace {

using Worker = PipelinePlan::Worker;

int raw_consumer_batch(StrategyKind k) {
    switch (k) {
        case StrategyKind::OneG:
        case StrategyKind::HgPe: return 3;
        case StrategyKind::TwoG: return 7;
        default: return 1;
    }
}

std::vector<int> resolve_qubit_counts(const StrategyConfig& cfg, const PipelinePlan& plan) {
    std::vector<int> counts = plan.min_qubits_per_node;
    if (cfg.pools.qubits_per_node <= 0) {
        return counts; // auto: exact computed minimum
    }
    for (int n = 0; n <= cfg.hops; ++n) {
        if (cfg.pools.qubits_per_node < plan.min_qubits_per_node[n]) {
            throw ConfigError("node " + std::to_string(n) + " requires at least " +
                              std::to_string(plan.min_qubits_per_node[n]) + " qubits for strategy " +
                              strategy_name(cfg.strategy) + ", configured " +
                              std::to_string(cfg.pools.qubits_per_node));
        }
        counts[n] = cfg.pools.qubits_per_node;
    }
    return counts;
}

} // namespace

std::string strategy_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::ZeroG: return "0g";
        case StrategyKind::OneG: return "1g";
        case StrategyKind::E2EOneG: return "e2e-1g";
        case StrategyKind::TwoG: return "2g";
        case StrategyKind::HgPe: return "hg-pe";
        case StrategyKind::E2EHgPe: return "e2e-hg-pe";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_name(const std::string& name) {
    for (StrategyKind k : kAllStrategies) {
        if (strategy_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

void StrategyConfig::validate() const {
    if (hops != 2 && hops != 4 && hops != 8) {
        throw ConfigError("hops must be one of 2, 4, 8");
    }
    if (n_meas < 3) {
        throw ConfigError("n_meas must be at least 3");
    }
    if (trajectories < 1) {
        throw ConfigError("trajectories must be at least 1");
    }
    if (!(total_km > 0.0)) {
        throw ConfigError("total_km must be positive");
    }
    if (!(c_fiber_km_s > 0.0)) {
        throw ConfigError("c_fiber_km_s must be positive");
    }
    if (pools.link_parallelism < 1) {
        throw ConfigError("link_parallelism must be at least 1");
    }
    if (pools.bank_batches < 1) {
        throw ConfigError("bank_batches must be at least 1");
    }
    channel.validate();
    PipelinePlan plan = make_plan(*this);
    resolve_qubit_counts(*this, plan); // throws with the shortfall named
}

std::vector<std::vector<std::array<int, 3>>> swap_schedule(int hops) {
    switch (hops) {
        case 2:
            return {{{0, 1, 2}}};
        case 4:
            return {{{0, 1, 2}, {2, 3, 4}}, {{0, 2, 4}}};
        case 8:
            return {{{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}},
                    {{0, 2, 4}, {4, 6, 8}},
                    {{0, 4, 8}}};
        default:
            throw ConfigError("swap_schedule: unsupported hop count " + std::to_string(hops));
    }
}

PipelinePlan make_plan(const StrategyConfig& cfg) {
    const int h = cfg.hops;
    const int k = cfg.pools.link_parallelism;
    const int B = cfg.pools.bank_batches;

    PipelinePlan plan;
    plan.min_qubits_per_node.assign(h + 1, 0);
    auto& need = plan.min_qubits_per_node;

    auto add_pool = [&](int a, int b, Stage s, int cap) {
        plan.pools.push_back(PoolSpec{a, b, s, cap});
        int width = stage_kind(s) == ResKind::Logical ? 7 : 1;
        need[a] += cap * width;
        need[b] += cap * width;
    };

    // Link generation, shared by every strategy.
    int raw_batch = raw_consumer_batch(cfg.strategy);
    for (int i = 0; i < h; ++i) {
        add_pool(i, i + 1, Stage::Raw, k + B * raw_batch);
        for (int w = 0; w < k; ++w) {
            plan.workers.push_back(Worker{Worker::Kind::Link, i, 0, i + 1,
                                          Stage::Raw, Stage::Raw, Stage::Raw});
            need[i] += 1;
            need[i + 1] += 1;
        }
    }

    // Round-based swapping over a given base stage.
    auto build_chain = [&](Stage base, Stage swapped, int final_batch) {
        bool logical = stage_kind(base) == ResKind::Logical;
        int width = logical ? 7 : 1;
        auto rounds = swap_schedule(h);
        for (std::size_t r = 0; r < rounds.size(); ++r) {
            for (const auto& t : rounds[r]) {
                int a = t[0], m = t[1], b = t[2];
                Stage in = (r == 0) ? base : swapped;
                bool is_final = (a == 0 && b == h);
                add_pool(a, b, swapped, 1 + B * (is_final ? final_batch : 1));
                plan.workers.push_back(Worker{Worker::Kind::Swap, a, m, b, in, in, swapped});
                need[a] += width;
                need[m] += 2 * width + (logical ? 6 : 0);
                need[b] += width;
            }
        }
    };

    auto add_link_purifiers = [&] {
        for (int i = 0; i < h; ++i) {
            add_pool(i, i + 1, Stage::Purified, 1 + B);
            plan.workers.push_back(Worker{Worker::Kind::Purify, i, 0, i + 1,
                                          Stage::Raw, Stage::Raw, Stage::Purified});
            need[i] += 3;
            need[i + 1] += 3;
        }
    };

    auto add_e2e_purifier = [&] {
        add_pool(0, h, Stage::Purified, 1 + B);
        plan.workers.push_back(Worker{Worker::Kind::Purify, 0, 0, h,
                                      Stage::Swapped, Stage::Swapped, Stage::Purified});
        need[0] += 3;
        need[h] += 3;
    };

    auto add_encoder = [&](int a, int b, Stage in) {
        add_pool(a, b, Stage::LogicalLink, 1 + B);
        plan.workers.push_back(Worker{Worker::Kind::Encode, a, 0, b,
                                      in, in, Stage::LogicalLink});
        need[a] += 7;
        need[b] += 7;
    };

    switch (cfg.strategy) {
        case StrategyKind::ZeroG:
            build_chain(Stage::Raw, Stage::Swapped, 1);
            plan.final_stage = Stage::Swapped;
            break;
        case StrategyKind::OneG:
            add_link_purifiers();
            build_chain(Stage::Purified, Stage::Swapped, 1);
            plan.final_stage = Stage::Swapped;
            break;
        case StrategyKind::E2EOneG:
            build_chain(Stage::Raw, Stage::Swapped, 3);
            add_e2e_purifier();
            plan.final_stage = Stage::Purified;
            break;
        case StrategyKind::TwoG:
            for (int i = 0; i < h; ++i) {
                add_pool(i, i + 1, Stage::LogicalLink, 1 + B);
                plan.workers.push_back(Worker{Worker::Kind::Ncx, i, 0, i + 1,
                                              Stage::Raw, Stage::Raw, Stage::LogicalLink});
                need[i] += 14;
                need[i + 1] += 14;
            }
            build_chain(Stage::LogicalLink, Stage::LogicalSwapped, 1);
            plan.final_stage = Stage::LogicalSwapped;
            break;
        case StrategyKind::HgPe:
            add_link_purifiers();
            for (int i = 0; i < h; ++i) {
                add_encoder(i, i + 1, Stage::Purified);
            }
            build_chain(Stage::LogicalLink, Stage::LogicalSwapped, 1);
            plan.final_stage = Stage::LogicalSwapped;
            break;
        case StrategyKind::E2EHgPe:
            build_chain(Stage::Raw, Stage::Swapped, 3);
            add_e2e_purifier();
            add_encoder(0, h, Stage::Purified);
            plan.final_stage = Stage::LogicalLink;
            break;
    }

    // Fidelity estimation holdings at the end nodes.
    bool logical_final = stage_kind(plan.final_stage) == ResKind::Logical;
    int est = logical_final ? 7 + 6 : 1;
    need[0] += est;
    need[h] += est;

    return plan;
}

Basis measurement_basis_for(int sample_index, int n_meas) {
    int block = n_meas / 3;
    if (sample_index < block) return Basis::X;
    if (sample_index < 2 * block) return Basis::Y;
    return Basis::Z;
}

Process fidelity_estimation_worker(SimContext& ctx, int n_meas, Stage final_stage) {
    const int h = ctx.topo.hops;
    auto& in = ctx.pool(0, h, final_stage);
    for (int i = 0; i < n_meas; ++i) {
        auto got = co_await in.acquire(1);
        BellResource r = std::move(got[0]);
        Basis basis = measurement_basis_for(i, n_meas);
        int m_left, m_right;
        if (r.kind == ResKind::Physical) {
            m_left = measure(*r.left[0], basis, ctx.params, ctx.now(), ctx.rng);
            m_right = measure(*r.right[0], basis, ctx.params, ctx.now(), ctx.rng);
        } else {
            auto anc_l = co_await ctx.qubits(0).acquire(6);
            auto anc_r = co_await ctx.qubits(h).acquire(6);
            LogicalQubit lb = r.left_block();
            LogicalQubit rb = r.right_block();
            m_left = logical_measure(lb, basis, anc_l, ctx.params, ctx.now(), ctx.rng);
            m_right = logical_measure(rb, basis, anc_r, ctx.params, ctx.now(), ctx.rng);
            for (auto* q : anc_l) ctx.release_qubit(q);
            for (auto* q : anc_r) ctx.release_qubit(q);
        }
        ctx.fid.add(basis, static_cast<double>(m_left * m_right) * bell_reference_sign(basis));
        ctx.release_resource(r);
        ++ctx.counters.delivered;
        ctx.t_last_meas = ctx.now();
    }
    ctx.engine().stop();
}

void spawn_pipeline(SimContext& ctx, const PipelinePlan& plan, int n_meas) {
    for (const auto& w : plan.workers) {
        switch (w.kind) {
            case Worker::Kind::Link:
                spawn(ctx.engine(), link_worker(ctx, w.a, w.b, w.out));
                break;
            case Worker::Kind::Purify:
                spawn(ctx.engine(), purify_worker(ctx, w.a, w.b, w.in_left, w.out));
                break;
            case Worker::Kind::Swap:
                spawn(ctx.engine(), swap_worker(ctx, w.a, w.m, w.b, w.in_left, w.in_right, w.out));
                break;
            case Worker::Kind::Ncx:
                spawn(ctx.engine(), ncx_worker(ctx, w.a, w.b, w.out));
                break;
            case Worker::Kind::Encode:
                spawn(ctx.engine(), encode_worker(ctx, w.a, w.b, w.in_left, w.out));
                break;
        }
    }
    spawn(ctx.engine(), fidelity_estimation_worker(ctx, n_meas, plan.final_stage));
}

FidelityEstimate finalize_estimate(const FidelityAccumulator& acc) {
    FidelityEstimate e;
    e.exp_xx = acc.xx.mean();
    e.exp_yy = acc.yy.mean();
    e.exp_zz = acc.zz.mean();
    e.n_xx = acc.xx.n;
    e.n_yy = acc.yy.n;
    e.n_zz = acc.zz.n;
    e.fidelity_raw = (1.0 + e.exp_xx - e.exp_yy + e.exp_zz) / 4.0;
    e.fidelity = std::clamp(e.fidelity_raw, 0.0, 1.0);
    double sx = acc.xx.std_error();
    double sy = acc.yy.std_error();
    double sz = acc.zz.std_error();
    e.fidelity_stderr = 0.25 * std::sqrt(sx * sx + sy * sy + sz * sz);
    return e;
}

RunResult run_strategy(const StrategyConfig& cfg) {
    cfg.validate();
    PipelinePlan plan = make_plan(cfg);
    std::vector<int> qubit_counts = resolve_qubit_counts(cfg, plan);

    auto wall_start = std::chrono::steady_clock::now();
    FidelityAccumulator acc;
    SimCounters counters;
    double simulated = 0.0;
    std::uint64_t hash = 0;

    for (int t = 0; t < cfg.trajectories; ++t) {
        SimContext ctx(cfg.topology(), cfg.channel, derive_seed(cfg.seed, t), qubit_counts,
                       plan.pools);
        spawn_pipeline(ctx, plan, cfg.n_meas);
        ctx.engine().run();
        if (!ctx.engine().stopped()) {
            throw SimulationError("pipeline stalled: event queue drained before " +
                                  std::to_string(cfg.n_meas) + " measurements completed");
        }
        acc.merge(ctx.fid);
        counters.merge(ctx.counters);
        double window_start = ctx.t_first_attempt > 0.0 ? ctx.t_first_attempt : 0.0;
        simulated += ctx.t_last_meas - window_start;
        hash = mix_seed(hash ^ ctx.engine().trace_hash());
    }

    RunResult r;
    r.config = cfg;
    r.estimate = finalize_estimate(acc);
    r.counters = counters;
    r.simulated_s = simulated;
    r.throughput_pairs_per_s =
        simulated > 0.0 ? static_cast<double>(counters.delivered) / simulated : 0.0;
    r.trace_hash = hash;
    r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return r;
}

} // namespace qrepsim

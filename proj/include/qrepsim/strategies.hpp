#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qrepsim/entanglement_ops.hpp"

namespace qrepsim {

// The six entanglement-distribution strategies. ZeroG swaps raw pairs; OneG
// purifies per link first; E2EOneG purifies end-to-end pairs; TwoG runs logical
// pairs through the whole chain; HgPe encodes purified link pairs; E2EHgPe
// purifies and encodes at the end nodes only.
enum class StrategyKind { ZeroG, OneG, E2EOneG, TwoG, HgPe, E2EHgPe };

inline constexpr std::array<StrategyKind, 6> kAllStrategies{
    StrategyKind::ZeroG,  StrategyKind::OneG, StrategyKind::E2EOneG,
    StrategyKind::TwoG,   StrategyKind::HgPe, StrategyKind::E2EHgPe,
};

std::string strategy_name(StrategyKind k);
std::optional<StrategyKind> strategy_from_name(const std::string& name);

// Pipelining knobs. qubits_per_node == 0 sizes every node to the exact computed
// minimum for the chosen strategy.
struct PoolTuning {
    int link_parallelism = 8;
    int bank_batches = 2;
    int qubits_per_node = 0;
};

struct StrategyConfig {
    StrategyKind strategy = StrategyKind::ZeroG;
    int hops = 2;
    int n_meas = 9000; // measurements per trajectory
    int trajectories = 10;
    ChannelParams channel;
    double total_km = 100.0;
    double c_fiber_km_s = 300000.0;
    std::uint64_t seed = 1;
    PoolTuning pools;

    Topology topology() const { return Topology{total_km, hops, c_fiber_km_s}; }
    void validate() const;
};

struct FidelityEstimate {
    double exp_xx = 0.0;
    double exp_yy = 0.0;
    double exp_zz = 0.0;
    std::uint64_t n_xx = 0;
    std::uint64_t n_yy = 0;
    std::uint64_t n_zz = 0;
    double fidelity_raw = 0.0; // (1 + exp_xx - exp_yy + exp_zz) / 4
    double fidelity = 0.0;     // raw value clipped to [0, 1]
    double fidelity_stderr = 0.0;
};

FidelityEstimate finalize_estimate(const FidelityAccumulator& acc);

struct RunResult {
    StrategyConfig config;
    FidelityEstimate estimate;
    double throughput_pairs_per_s = 0.0;
    double simulated_s = 0.0;
    double wall_s = 0.0;
    SimCounters counters;
    std::uint64_t trace_hash = 0; // mixed across trajectories
};

// Round-based swapping schedule: each round lists (left, swapper, right) triples
// executed concurrently. Supports hops 2, 4 and 8.
std::vector<std::vector<std::array<int, 3>>> swap_schedule(int hops);

// Worker layout, pool capacities and per-node qubit minima for one strategy.
struct PipelinePlan {
    struct Worker {
        enum class Kind { Link, Purify, Swap, Ncx, Encode };
        Kind kind;
        int a = 0;
        int m = 0;
        int b = 0;
        Stage in_left = Stage::Raw;
        Stage in_right = Stage::Raw;
        Stage out = Stage::Raw;
    };
    std::vector<PoolSpec> pools;
    std::vector<Worker> workers;
    std::vector<int> min_qubits_per_node;
    Stage final_stage = Stage::Swapped;
};

PipelinePlan make_plan(const StrategyConfig& cfg);

// Measurement basis for sample i of n: the first floor(n/3) samples in X, the
// next floor(n/3) in Y, the remainder in Z.
Basis measurement_basis_for(int sample_index, int n_meas);

inline double bell_reference_sign(Basis b) { return b == Basis::Y ? -1.0 : 1.0; }

// Consumes end-to-end resources, measures both halves per the basis schedule and
// stops the engine after n_meas samples.
Process fidelity_estimation_worker(SimContext& ctx, int n_meas, Stage final_stage);

// Spawns the full worker set for the configured strategy onto the context.
void spawn_pipeline(SimContext& ctx, const PipelinePlan& plan, int n_meas);

// Runs all trajectories for one configuration and aggregates the results.
RunResult run_strategy(const StrategyConfig& cfg);

} // namespace qrepsim

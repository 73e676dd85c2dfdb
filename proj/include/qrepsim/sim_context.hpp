#pragma once

#include <deque>
#include <map>
#include <tuple>
#include <vector>

#include "qrepsim/random.hpp"
#include "qrepsim/resources.hpp"

namespace qrepsim {

// Audited event counters for one trajectory. Merged across trajectories into the
// run result so resource-consumption ratios can be checked exactly.
struct SimCounters {
    std::uint64_t link_attempts = 0;
    std::uint64_t raw_generated = 0;
    std::uint64_t raw_consumed_swap = 0;
    std::uint64_t raw_consumed_purify = 0;
    std::uint64_t raw_consumed_ncx = 0;
    std::uint64_t purify_attempts = 0;
    std::uint64_t purify_accepts = 0;
    std::uint64_t purify_rejects = 0;
    std::uint64_t swaps_physical = 0;
    std::uint64_t swaps_logical = 0;
    std::uint64_t ncx_encodes = 0;
    std::uint64_t seed_encodes = 0;
    std::uint64_t delivered = 0;

    void merge(const SimCounters& o) {
        link_attempts += o.link_attempts;
        raw_generated += o.raw_generated;
        raw_consumed_swap += o.raw_consumed_swap;
        raw_consumed_purify += o.raw_consumed_purify;
        raw_consumed_ncx += o.raw_consumed_ncx;
        purify_attempts += o.purify_attempts;
        purify_accepts += o.purify_accepts;
        purify_rejects += o.purify_rejects;
        swaps_physical += o.swaps_physical;
        swaps_logical += o.swaps_logical;
        ncx_encodes += o.ncx_encodes;
        seed_encodes += o.seed_encodes;
        delivered += o.delivered;
    }
};

// Running sums of +-1 samples per measurement basis (Y samples carry the Bell
// reference sign, so a clean pair contributes -1 in the Y basis).
struct BasisStats {
    double sum = 0.0;
    std::uint64_t n = 0;

    void add(double v) {
        sum += v;
        ++n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    // Standard error of the mean for +-1 samples.
    double std_error() const {
        if (n < 2) return 0.0;
        double m = mean();
        double var = (1.0 - m * m) * static_cast<double>(n) / static_cast<double>(n - 1);
        return std::sqrt(var / static_cast<double>(n));
    }

    void merge(const BasisStats& o) {
        sum += o.sum;
        n += o.n;
    }
};

struct FidelityAccumulator {
    BasisStats xx, yy, zz;

    void add(Basis b, double sample) {
        switch (b) {
            case Basis::X: xx.add(sample); break;
            case Basis::Y: yy.add(sample); break;
            case Basis::Z: zz.add(sample); break;
        }
    }
    void merge(const FidelityAccumulator& o) {
        xx.merge(o.xx);
        yy.merge(o.yy);
        zz.merge(o.zz);
    }
};

struct PoolSpec {
    int a = 0;
    int b = 0;
    Stage stage = Stage::Raw;
    int capacity = 1;
};

// All state owned by one simulation trajectory: the event engine, the per-node
// qubit pools, the staged resource pools, one random stream and the counters.
class SimContext {
public:
    SimContext(const Topology& topo, const ChannelParams& params, std::uint64_t seed,
               const std::vector<int>& qubits_per_node, const std::vector<PoolSpec>& pools)
        : topo(topo), params(params), rng(seed) {
        for (int n = 0; n <= topo.hops; ++n) {
            int count = n < static_cast<int>(qubits_per_node.size()) ? qubits_per_node[n] : 0;
            qubit_pools_.emplace_back(engine_, n, count);
        }
        for (const PoolSpec& p : pools) {
            pools_.try_emplace(key(p.a, p.b, p.stage), engine_, p.capacity);
        }
    }

    ~SimContext() { engine_.shutdown(); }
    SimContext(const SimContext&) = delete;

    Engine& engine() { return engine_; }
    double now() const { return engine_.now(); }
    Delay delay(double dt) { return Delay{engine_, dt}; }

    QubitPool& qubits(int node) { return qubit_pools_.at(node); }

    ResourcePool& pool(int a, int b, Stage stage) {
        auto it = pools_.find(key(a, b, stage));
        if (it == pools_.end()) {
            throw ContractViolation("SimContext::pool: pool was not declared in the plan");
        }
        return it->second;
    }

    void release_qubit(PhysicalQubit* q) { qubits(q->node).release(q); }

    void release_resource(const BellResource& r) {
        for (int i = 0; i < r.width(); ++i) {
            release_qubit(r.left[i]);
            release_qubit(r.right[i]);
        }
    }

    void note_link_attempt() {
        ++counters.link_attempts;
        if (t_first_attempt < 0.0) {
            t_first_attempt = now();
        }
    }

    bool all_pools_consistent() const {
        for (const auto& qp : qubit_pools_) {
            if (!qp.consistent()) return false;
        }
        return true;
    }

    Topology topo;
    ChannelParams params;
    RandomStream rng;
    SimCounters counters;
    FidelityAccumulator fid;
    double t_first_attempt = -1.0;
    double t_last_meas = 0.0;

private:
    static std::tuple<int, int, int> key(int a, int b, Stage s) {
        return {a, b, static_cast<int>(s)};
    }

    Engine engine_;
    std::deque<QubitPool> qubit_pools_;
    std::map<std::tuple<int, int, int>, ResourcePool> pools_;
};

} // namespace qrepsim

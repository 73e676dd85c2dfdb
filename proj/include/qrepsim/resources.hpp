#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>

#include "qrepsim/desim.hpp"
#include "qrepsim/steane.hpp"

namespace qrepsim {

// Linear chain geometry: hops equal links covering total_km, node i at
// i * total_km / hops.
struct Topology {
    double total_km = 100.0;
    int hops = 2;
    double c_fiber_km_s = 300000.0;

    double link_km() const { return total_km / hops; }
    double position_km(int node) const { return node * link_km(); }
    double delay_s(int a, int b) const {
        return std::abs(position_km(a) - position_km(b)) / c_fiber_km_s;
    }
};

// Propagation delay of a classical message between two chain nodes.
inline double classical_delay(const Topology& topo, int from_node, int to_node) {
    return topo.delay_s(from_node, to_node);
}

// Heralded link success probability 10^(-xi * d / 10).
inline double link_success_prob(double loss_db_per_km, double distance_km) {
    return std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

enum class ResKind { Physical, Logical };

// Pipeline stage of a banked resource. Stages keep raw, purified, swapped and
// logical pairs in separate queues so each consumer sees only its own inputs.
enum class Stage { Raw, Purified, Swapped, LogicalLink, LogicalSwapped };

inline ResKind stage_kind(Stage s) {
    return (s == Stage::LogicalLink || s == Stage::LogicalSwapped) ? ResKind::Logical
                                                                   : ResKind::Physical;
}

std::string stage_name(Stage s);

// A physical or logical Bell pair spanning two nodes.
struct BellResource {
    ResKind kind = ResKind::Physical;
    Stage stage = Stage::Raw;
    int left_node = -1;
    int right_node = -1;
    double created_at = 0.0;
    // Physical: slot 0 of each side. Logical: full blocks, encoder ordering.
    std::array<PhysicalQubit*, 7> left{};
    std::array<PhysicalQubit*, 7> right{};

    int width() const { return kind == ResKind::Logical ? 7 : 1; }

    LogicalQubit left_block() const { return LogicalQubit{left_node, left}; }
    LogicalQubit right_block() const { return LogicalQubit{right_node, right}; }
};

inline BellResource make_physical_pair(Stage stage, int left_node, int right_node,
                                       PhysicalQubit* lq, PhysicalQubit* rq, double created_at) {
    BellResource r;
    r.kind = ResKind::Physical;
    r.stage = stage;
    r.left_node = left_node;
    r.right_node = right_node;
    r.created_at = created_at;
    r.left[0] = lq;
    r.right[0] = rq;
    return r;
}

inline BellResource make_logical_pair(Stage stage, const LogicalQubit& lb, const LogicalQubit& rb,
                                      double created_at) {
    BellResource r;
    r.kind = ResKind::Logical;
    r.stage = stage;
    r.left_node = lb.node;
    r.right_node = rb.node;
    r.created_at = created_at;
    r.left = lb.data;
    r.right = rb.data;
    return r;
}

// Bounded FIFO queue of Bell resources with blocking consumers and producers.
// Producers reserve a slot before starting work, so capacity bounds banked items
// plus in-flight production; consumers take the oldest items first.
class ResourcePool {
public:
    ResourcePool(Engine& eng, int capacity) : eng_(eng), capacity_(capacity) {}
    ResourcePool(const ResourcePool&) = delete;

    int capacity() const { return capacity_; }
    int size() const { return static_cast<int>(items_.size()); }
    std::uint64_t committed_total() const { return committed_; }
    std::uint64_t consumed_total() const { return consumed_; }

    struct ReserveSlot {
        ResourcePool& pool;
        bool await_ready() {
            if (pool.slot_waiters_.empty() && pool.used() < pool.capacity_) {
                ++pool.reserved_;
                return true;
            }
            return false;
        }
        void await_suspend(std::coroutine_handle<> h) { pool.slot_waiters_.push_back(h); }
        void await_resume() const noexcept {}
    };

    ReserveSlot reserve_slot() { return ReserveSlot{*this}; }

    // Producer finished: the reserved slot now holds a banked resource.
    void commit(BellResource r) {
        --reserved_;
        items_.push_back(std::move(r));
        ++committed_;
        pump_consumers();
    }

    // Producer gave up (rejected purification): free the reserved slot.
    void abort_slot() {
        --reserved_;
        pump_slots();
    }

    struct Acquire {
        ResourcePool& pool;
        int n;
        std::vector<BellResource> out;

        bool await_ready() {
            if (pool.waiters_.empty() && pool.size() >= n) {
                pool.grant(n, out);
                return true;
            }
            return false;
        }
        void await_suspend(std::coroutine_handle<> h) {
            pool.waiters_.push_back(Waiter{n, h, &out});
        }
        std::vector<BellResource> await_resume() { return std::move(out); }
    };

    Acquire acquire(int n) {
        if (n <= 0 || n > capacity_) {
            throw ContractViolation("ResourcePool::acquire: request exceeds pool capacity");
        }
        return Acquire{*this, n, {}};
    }

private:
    struct Waiter {
        int n;
        std::coroutine_handle<> h;
        std::vector<BellResource>* out;
    };

    int used() const { return size() + reserved_; }

    void grant(int n, std::vector<BellResource>& out) {
        out.reserve(n);
        for (int i = 0; i < n; ++i) {
            out.push_back(std::move(items_.front()));
            items_.pop_front();
        }
        consumed_ += n;
        pump_slots();
    }

    void pump_consumers() {
        while (!waiters_.empty() && size() >= waiters_.front().n) {
            Waiter w = waiters_.front();
            waiters_.pop_front();
            grant(w.n, *w.out);
            eng_.schedule(eng_.now(), [h = w.h] { h.resume(); });
        }
    }

    void pump_slots() {
        while (!slot_waiters_.empty() && used() < capacity_) {
            auto h = slot_waiters_.front();
            slot_waiters_.pop_front();
            ++reserved_;
            eng_.schedule(eng_.now(), [h] { h.resume(); });
        }
    }

    Engine& eng_;
    int capacity_;
    int reserved_ = 0;
    std::deque<BellResource> items_;
    std::deque<Waiter> waiters_;
    std::deque<std::coroutine_handle<>> slot_waiters_;
    std::uint64_t committed_ = 0;
    std::uint64_t consumed_ = 0;
};

} // namespace qrepsim

#pragma once

#include <algorithm>
#include <coroutine>
#include <cstdint>
#include <cstring>
#include <deque>
#include <exception>
#include <functional>
#include <unordered_set>
#include <vector>

#include "qrepsim/errors.hpp"
#include "qrepsim/pauli_frame.hpp"

namespace qrepsim {

// Deterministic discrete-event engine. Events are ordered by (time, seq) where
// seq is a global insertion counter, so equal-time events run FIFO. Processes
// are coroutines cooperatively scheduled inside the event loop; the engine owns
// every spawned coroutine and destroys the survivors on teardown.
class Engine {
public:
    Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;
    ~Engine() { shutdown(); }

    double now() const { return now_; }

    std::uint64_t schedule(double t, std::function<void()> fn) {
        if (t < now_) {
            throw ContractViolation("schedule: event time precedes the current clock");
        }
        std::uint64_t id = next_seq_++;
        heap_.push_back(Event{t, id, std::move(fn)});
        std::push_heap(heap_.begin(), heap_.end(), Later{});
        return id;
    }

    // Runs events until stop() is called or the queue drains.
    void run() {
        while (!stopped_ && !heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end(), Later{});
            Event ev = std::move(heap_.back());
            heap_.pop_back();
            now_ = ev.time;
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(ev.time));
            std::memcpy(&bits, &ev.time, sizeof(bits));
            trace_hash_ = mix(trace_hash_ ^ bits, ev.seq);
            ev.fn();
            if (failure_) {
                auto e = failure_;
                failure_ = nullptr;
                std::rethrow_exception(e);
            }
        }
    }

    void stop() { stopped_ = true; }
    bool stopped() const { return stopped_; }

    // Hash over the executed (time, seq) sequence; equal for bit-identical traces.
    std::uint64_t trace_hash() const { return trace_hash_; }

    std::uint64_t events_executed() const { return trace_count_; }

    void fail(std::exception_ptr e) { failure_ = e; }

    void adopt(std::coroutine_handle<> h) { live_.insert(h.address()); }
    void drop(std::coroutine_handle<> h) { live_.erase(h.address()); }

    // Destroys all still-suspended coroutines. Safe to call more than once.
    void shutdown() {
        auto pending = std::move(live_);
        live_.clear();
        for (void* addr : pending) {
            std::coroutine_handle<>::from_address(addr).destroy();
        }
        heap_.clear();
    }

private:
    struct Event {
        double time;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
        ++trace_count_;
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    std::vector<Event> heap_;
    std::unordered_set<void*> live_;
    std::exception_ptr failure_;
    double now_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t trace_hash_ = 0x6a09e667f3bcc908ULL;
    std::uint64_t trace_count_ = 0;
    bool stopped_ = false;
};

// Detached simulation process. Spawn through Engine::spawn; the coroutine frame
// is destroyed at completion or at engine shutdown.
class Process {
public:
    struct promise_type {
        Engine* engine = nullptr;

        Process get_return_object() {
            return Process{std::coroutine_handle<promise_type>::from_promise(*this)};
        }
        std::suspend_always initial_suspend() noexcept { return {}; }

        struct FinalAwaiter {
            bool await_ready() noexcept { return false; }
            void await_suspend(std::coroutine_handle<promise_type> h) noexcept {
                Engine* eng = h.promise().engine;
                if (eng) eng->drop(h);
                h.destroy();
            }
            void await_resume() noexcept {}
        };
        FinalAwaiter final_suspend() noexcept { return {}; }

        void return_void() noexcept {}
        void unhandled_exception() {
            if (engine) {
                engine->fail(std::current_exception());
            } else {
                std::terminate();
            }
        }
    };

    Process(Process&& other) noexcept : h_(other.h_) { other.h_ = nullptr; }
    Process(const Process&) = delete;
    ~Process() {
        if (h_) h_.destroy();
    }

    std::coroutine_handle<promise_type> release() {
        auto h = h_;
        h_ = nullptr;
        return h;
    }

private:
    explicit Process(std::coroutine_handle<promise_type> h) : h_(h) {}
    std::coroutine_handle<promise_type> h_;
};

inline void spawn(Engine& eng, Process p) {
    auto h = p.release();
    h.promise().engine = &eng;
    eng.adopt(h);
    eng.schedule(eng.now(), [h] { h.resume(); });
}

// co_await eng.delay(dt): resumes after dt simulated seconds. dt == 0 still
// round-trips through the queue so FIFO ordering is preserved.
struct Delay {
    Engine& eng;
    double dt;
    bool await_ready() const noexcept { return false; }
    void await_suspend(std::coroutine_handle<> h) {
        eng.schedule(eng.now() + dt, [h] { h.resume(); });
    }
    void await_resume() const noexcept {}
};

inline Delay delay(Engine& eng, double dt) { return Delay{eng, dt}; }

// Node-local pool of physical qubits with blocking FIFO acquisition. Waiters are
// served strictly in arrival order; a large request at the head blocks later
// smaller ones until it can be granted atomically.
class QubitPool {
public:
    QubitPool(Engine& eng, int node, int count) : eng_(eng) {
        storage_.resize(count);
        for (int i = 0; i < count; ++i) {
            storage_[i].node = node;
            storage_[i].index = i;
        }
        for (auto& q : storage_) {
            free_.push_back(&q);
        }
    }
    QubitPool(const QubitPool&) = delete;

    int total() const { return static_cast<int>(storage_.size()); }
    int available() const { return static_cast<int>(free_.size()); }
    std::uint64_t acquired_total() const { return acquired_; }
    std::uint64_t released_total() const { return released_; }

    struct Acquire {
        QubitPool& pool;
        int n;
        std::vector<PhysicalQubit*> out;

        bool await_ready() {
            if (pool.waiters_.empty() && pool.available() >= n) {
                pool.grant(n, out);
                return true;
            }
            return false;
        }
        void await_suspend(std::coroutine_handle<> h) {
            pool.waiters_.push_back(Waiter{n, h, &out});
        }
        std::vector<PhysicalQubit*> await_resume() { return std::move(out); }
    };

    Acquire acquire(int n) {
        if (n <= 0 || n > total()) {
            throw ContractViolation("QubitPool::acquire: invalid request size");
        }
        return Acquire{*this, n, {}};
    }

    // Resets the qubit (clean frame, fresh timestamp) and returns it to the pool.
    void release(PhysicalQubit* q) {
        if (q->state == QubitState::Free) {
            throw ContractViolation("QubitPool::release: qubit already free");
        }
        init_qubit(*q, eng_.now(), QubitState::Free);
        free_.push_back(q);
        ++released_;
        pump();
    }

    // Structural consistency: every pooled qubit is Free and every Free qubit is pooled.
    bool consistent() const {
        std::size_t n_free = 0;
        for (const auto& q : storage_) {
            if (q.state == QubitState::Free) ++n_free;
        }
        if (n_free != free_.size()) return false;
        for (const auto* q : free_) {
            if (q->state != QubitState::Free) return false;
        }
        return true;
    }

private:
    struct Waiter {
        int n;
        std::coroutine_handle<> h;
        std::vector<PhysicalQubit*>* out;
    };

    void grant(int n, std::vector<PhysicalQubit*>& out) {
        out.reserve(n);
        for (int i = 0; i < n; ++i) {
            out.push_back(free_.front());
            free_.pop_front();
        }
        acquired_ += n;
    }

    void pump() {
        while (!waiters_.empty() && available() >= waiters_.front().n) {
            Waiter w = waiters_.front();
            waiters_.pop_front();
            grant(w.n, *w.out);
            eng_.schedule(eng_.now(), [h = w.h] { h.resume(); });
        }
    }

    Engine& eng_;
    std::vector<PhysicalQubit> storage_;
    std::deque<PhysicalQubit*> free_;
    std::deque<Waiter> waiters_;
    std::uint64_t acquired_ = 0;
    std::uint64_t released_ = 0;
};

} // namespace qrepsim

#include "qrepsim/runner.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace qrepsim {

std::vector<RunResult> run_points(const std::vector<StrategyConfig>& points, int jobs) {
    std::vector<RunResult> results(points.size());
    if (points.empty()) {
        return results;
    }
    unsigned n_threads = jobs > 0 ? static_cast<unsigned>(jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, points.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size()) {
                return;
            }
            try {
                results[i] = run_strategy(points[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) {
        threads.emplace_back(work);
    }
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

} // namespace qrepsim

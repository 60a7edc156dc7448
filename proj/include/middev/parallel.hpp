#pragma once

// Deterministic replica-parallel execution: workers claim replica indices
// from a shared counter and write into pre-sized result slots; the caller
// then reduces in index order, so the outcome never depends on the number
// of workers or their scheduling.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace middev {

/// Effective worker count: `requested` if positive, otherwise the hardware
/// concurrency (at least 1).
[[nodiscard]] inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Evaluate fn(i) for every i in [0, count), filling slot i of the returned
/// vector.  fn must be callable concurrently from several threads; the i-th
/// result depends only on i.  The first exception thrown by any worker is
/// rethrown on the calling thread after all workers join.
template <class Result, class Fn>
std::vector<Result> run_indexed(std::int64_t count, int threads, Fn&& fn) {
    std::vector<Result> slots(static_cast<std::size_t>(count));
    const int workers = std::min<std::int64_t>(effective_threads(threads), count > 0 ? count : 1);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)] = fn(i);
        return slots;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                slots[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return slots;
}

}  // namespace middev

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gsplab {

/// Worker count: GSP_LAB_THREADS if set and positive, else hardware concurrency.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers.  Each index runs
/// exactly once; callers write into slot i, so results are ordered.  The first
/// exception thrown by any body is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t threads = default_thread_count()) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    threads = std::min(threads, n);
    std::mutex mu;
    std::size_t next = 0;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= n || failure) return;
                i = next++;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace gsplab

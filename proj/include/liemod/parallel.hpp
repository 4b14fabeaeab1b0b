#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace liemod {

// Runs fn(i) for i in [0, count) across up to `threads` std::threads.
// Work is split by index so callers that write into slot i of a preallocated
// buffer get output independent of the thread count. The first exception
// thrown by any worker is rethrown in the calling thread.
template <typename Fn>
void parallel_for(size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (threads > count) threads = static_cast<unsigned>(count);
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const size_t lo = count * t / threads;
        const size_t hi = count * (t + 1) / threads;
        pool.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace liemod

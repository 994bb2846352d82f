#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tswave {

// Runs fn(i) for i in [0, n) on up to `threads` workers; results go to caller-owned slots,
// so the outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallelFor(size_t n, int threads, Fn&& fn) {
    const size_t nt = std::min<size_t>(std::max(threads, 1), n);
    if (nt <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex m;
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(m);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace tswave

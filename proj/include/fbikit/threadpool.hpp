#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fbikit {

// Run fn(i) for i in [0, n). Each index is claimed exactly once; callers
// write results into preallocated slots so the output is independent of
// scheduling and of the thread count.
inline void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    int workers = std::min<long>(threads, n);
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace fbikit

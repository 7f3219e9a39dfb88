// Bounded worker pool for parameter sweeps; results land in index order so
// reductions are deterministic.
#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace pgl2num {

inline void parallel_for(std::size_t n, int jobs,
                         const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<std::size_t>(jobs, n);
    pool.reserve(k);
    for (int j = 0; j < k; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace pgl2num

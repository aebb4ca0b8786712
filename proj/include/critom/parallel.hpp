#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace critom {

// Runs fn(i) for i in [0, n) split into contiguous chunks across worker
// threads. threads = 0 uses the hardware count. fn must be safe to call
// concurrently for distinct i.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn) {
    unsigned nt = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    if (nt < 1)
        nt = 1;
    if (nt == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    nt = std::min<std::size_t>(nt, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto &th : pool)
        th.join();
}

} // namespace critom

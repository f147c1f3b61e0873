/* Deterministic chunked parallelism.  PROFLOW_THREADS caps the worker
 * count; chunk boundaries depend only on the range size and the budget, so
 * per-chunk results can be merged in chunk order and the final output is
 * identical for every thread count.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace proflow {

inline unsigned thread_budget() {
    if (const char* s = std::getenv("PROFLOW_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 64));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Split [0, n) into contiguous chunks and run `work(begin, end, chunk)` on
// one thread per chunk.  The worker must write only to chunk-local state.
inline void parallel_chunks(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t, unsigned)>& work) {
    if (n == 0) return;
    const std::size_t budget = std::min<std::size_t>(thread_budget(), n);
    if (budget <= 1) {
        work(0, n, 0);
        return;
    }
    const std::size_t step = (n + budget - 1) / budget;
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c * step < n; ++c) {
        const std::size_t lo = c * step, hi = std::min(n, lo + step);
        pool.emplace_back(work, lo, hi, static_cast<unsigned>(c));
    }
    for (auto& t : pool) t.join();
}

}  // namespace proflow

#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace etaq {

// Splits [lo, hi) into fixed-size chunks processed by up to `jobs` workers.
// Results land in chunk order, so any merge over them is deterministic
// regardless of scheduling.
template <typename Result, typename Fn>
std::vector<Result> run_chunked(long lo, long hi, int jobs, long chunk, Fn fn) {
    if (hi <= lo) return {};
    if (chunk < 1) chunk = 1;
    long n_chunks = (hi - lo + chunk - 1) / chunk;
    std::vector<Result> results(static_cast<std::size_t>(n_chunks));
    if (jobs <= 1 || n_chunks == 1) {
        for (long i = 0; i < n_chunks; ++i) {
            long a = lo + i * chunk;
            long b = std::min(hi, a + chunk);
            results[static_cast<std::size_t>(i)] = fn(a, b);
        }
        return results;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n_chunks) return;
            long a = lo + i * chunk;
            long b = std::min(hi, a + chunk);
            results[static_cast<std::size_t>(i)] = fn(a, b);
        }
    };
    std::vector<std::thread> pool;
    int n_workers = static_cast<int>(std::min<long>(jobs, n_chunks));
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace etaq

#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace pgc {

inline unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Run fn(worker, begin, end) over [0, total) split into contiguous chunks.
// Workers only read shared inputs; results are merged by the caller, so
// the outcome cannot depend on scheduling.
template <class F>
void parallel_chunks(std::uint64_t total, unsigned jobs, F&& fn) {
    if (jobs <= 1 || total <= 1) {
        if (total > 0) fn(0u, std::uint64_t(0), total);
        return;
    }
    unsigned workers = jobs;
    if (std::uint64_t(workers) > total) workers = unsigned(total);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::uint64_t chunk = total / workers, extra = total % workers, begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
        threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace pgc

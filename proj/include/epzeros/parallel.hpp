#pragma once

// Deterministic parallelism: work is split into fixed-size blocks pulled by a
// shared counter, every item writes to its own slot, and reductions run
// serially over the slot array with a fixed pairwise tree. Results are
// bit-identical for any thread count.

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace epz {

int thread_count();
void set_thread_count(int n);

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    int nt = thread_count();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t block = std::max<std::size_t>(1, n / (8 * nt * nt) + 1);
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (true) {
            std::size_t b = next.fetch_add(block);
            if (b >= n || failed.load()) return;
            std::size_t e = std::min(n, b + block);
            try {
                for (std::size_t i = b; i < e; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nt - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

// fixed-shape pairwise sum; independent of thread count by construction
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

struct MeanStderr {
    double mean = 0, stderr_ = 0;
    std::size_t n = 0;
};
MeanStderr mean_stderr(const std::vector<double>& v);

} // namespace epz

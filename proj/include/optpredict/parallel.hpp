#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace optpredict::mc {

/// Worker count for sample loops: OPTPREDICT_THREADS when set (>= 1), else
/// hardware concurrency clamped to [1, 8]. Results never depend on it.
int worker_count();

/// Runs fn(i) for i in [0, n) across workers and returns the results indexed
/// by i. Work is handed out in chunks, but every result lands in its own
/// slot, so the output is identical for any worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(worker_count()),
                                               n == 0 ? 1 : n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    constexpr std::size_t chunk = 64;
    auto body = [&] {
        try {
            for (;;) {
                const std::size_t lo = next.fetch_add(chunk);
                if (lo >= n)
                    return;
                const std::size_t hi = std::min(lo + chunk, n);
                for (std::size_t i = lo; i < hi; ++i)
                    out[i] = fn(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(body);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
    return out;
}

/// Pairwise (tree) summation over a fixed index order; deterministic and
/// accurate to ~log2(n) rounding errors.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum(x.data(), x.size());
}

struct MeanStdError {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error of the mean (two-pass, pairwise sums).
MeanStdError mean_and_stderr(const std::vector<double>& xs);

} // namespace optpredict::mc

#include "optpredict/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace optpredict::mc {

int worker_count() {
    if (const char* env = std::getenv("OPTPREDICT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<int>(std::min<long>(v, 256));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hc, 1u, 8u));
}

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

MeanStdError mean_and_stderr(const std::vector<double>& xs) {
    MeanStdError r;
    const std::size_t n = xs.size();
    if (n == 0)
        return r;
    r.mean = pairwise_sum(xs) / static_cast<double>(n);
    if (n == 1)
        return r;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - r.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    r.std_error = std::sqrt(var / static_cast<double>(n));
    return r;
}

} // namespace optpredict::mc

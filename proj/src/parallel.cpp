#include "epzeros/parallel.hpp"

#include <cmath>

namespace epz {

namespace {
int g_threads = 0;
}

int thread_count() {
    if (g_threads > 0) return g_threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void set_thread_count(int n) { g_threads = n; }

double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 16) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

MeanStderr mean_stderr(const std::vector<double>& v) {
    MeanStderr r;
    r.n = v.size();
    if (r.n == 0) return r;
    r.mean = pairwise_sum(v) / static_cast<double>(r.n);
    std::vector<double> sq(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double d = v[i] - r.mean;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / std::max<std::size_t>(1, r.n - 1);
    r.stderr_ = std::sqrt(var / static_cast<double>(r.n));
    return r;
}

} // namespace epz

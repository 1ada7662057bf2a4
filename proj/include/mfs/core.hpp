// core.hpp — shared primitives: points, errors, compensated summation,
// deterministic parallel reduction.
#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mfs {

// Spatial point. N ∈ {1,2}; 1-D uses coordinate 0 only.
using Point = std::array<double, 2>;

inline double distance(const Point& a, const Point& b, int dim) {
    double d2 = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

// Invalid family/domain/solver configuration (violated invariant).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown (bracket overflow, divergent integral, ...).
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

// Neumaier compensated accumulator. Rounding error of the total is O(eps),
// independent of the number of terms.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    void merge(const KahanSum& other) {
        add(other.sum);
        add(other.comp);
    }
    double total() const { return sum + comp; }
};

namespace detail {

inline unsigned hardware_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

inline std::atomic<int>& thread_cap_storage() {
    static std::atomic<int> cap{0};  // 0 = unset, fall back to env / hardware
    return cap;
}

}  // namespace detail

// Worker cap for parallel reductions: explicit set_thread_cap() wins, then
// MFS_THREADS, then hardware concurrency.
inline void set_thread_cap(int n) { detail::thread_cap_storage().store(n); }

inline unsigned effective_threads() {
    const int cap = detail::thread_cap_storage().load();
    if (cap > 0) return static_cast<unsigned>(cap);
    if (const char* env = std::getenv("MFS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return detail::hardware_threads();
}

// Compensated sum of term(i) for i in [0, n). The index range is split into
// a fixed number of chunks and partial sums are merged in chunk order, so
// the result is bit-identical for every thread count.
template <class Term>
double deterministic_sum(std::size_t n, Term&& term) {
    constexpr std::size_t kChunks = 64;
    if (n == 0) return 0.0;

    const std::size_t nchunks = std::min<std::size_t>(kChunks, n);
    const std::size_t chunk = (n + nchunks - 1) / nchunks;
    std::vector<KahanSum> partial(nchunks);

    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        KahanSum acc;
        for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
        partial[c] = acc;
    };

    const unsigned nthreads =
        std::min<unsigned>(effective_threads(), static_cast<unsigned>(nchunks));
    if (nthreads <= 1 || n < 4096) {
        for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= nchunks) break;
                    run_chunk(c);
                }
            });
        for (auto& th : pool) th.join();
    }

    KahanSum total;
    for (const auto& p : partial) total.merge(p);
    return total.total();
}

// Parallel max of score(i) over [0, n) with the smallest attaining index.
// max-reduction is exact, so the result matches the sequential scan for any
// thread count.
template <class Score>
std::pair<double, std::size_t> parallel_worst(std::size_t n, Score&& score) {
    if (n == 0) return {0.0, 0};
    constexpr std::size_t kChunks = 64;
    const std::size_t nchunks = std::min<std::size_t>(kChunks, n);
    const std::size_t chunk = (n + nchunks - 1) / nchunks;
    std::vector<std::pair<double, std::size_t>> partial(
        nchunks, {-std::numeric_limits<double>::infinity(), 0});

    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = lo;
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = score(i);
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        partial[c] = {best, arg};
    };

    const unsigned nthreads =
        std::min<unsigned>(effective_threads(), static_cast<unsigned>(nchunks));
    if (nthreads <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= nchunks) break;
                    run_chunk(c);
                }
            });
        for (auto& th : pool) th.join();
    }

    std::pair<double, std::size_t> best = partial[0];
    for (const auto& p : partial)
        if (p.first > best.first) best = p;
    return best;
}

}  // namespace mfs

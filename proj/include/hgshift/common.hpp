#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace hgshift {

using Index = std::size_t;

/// Formats a double with enough digits to round-trip, for reproducible reports.
inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

/// Number of worker threads to use. HGSHIFT_THREADS caps parallelism
/// (0 or unset means all cores).
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("HGSHIFT_THREADS");
    if (env == nullptr) return hw;
    long cap = std::strtol(env, nullptr, 10);
    if (cap <= 0) return hw;
    return static_cast<unsigned>(cap) < hw ? static_cast<unsigned>(cap) : hw;
}

/// Runs fn(i) for i in [0, n). Work items must be independent; results
/// keyed by index stay deterministic regardless of the thread count.
template <typename Fn>
void parallel_for(Index n, Fn&& fn) {
    unsigned threads = thread_budget();
    if (threads <= 1 || n <= 1) {
        for (Index i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<Index>(threads) > n) threads = static_cast<unsigned>(n);
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<Index> next{0};
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                Index i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace detail {

inline double sq_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double dx = a[0] - b[0];
    double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

}  // namespace detail

}  // namespace hgshift

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

namespace levy {

struct MeanEstimate {
    double mean;
    double std_error;
};

/// Sample mean and its standard error (sample sd / sqrt(n)).
MeanEstimate mean_estimate(std::span<const double> xs);

/// diff / se, with 0 for 0/0 and a signed infinity when only se vanishes.
double z_score(double diff, double se);

/// Unbiased k-statistics k1, k2, k3 with delete-one jackknife standard errors.
struct Cumulants {
    std::array<double, 3> k;
    std::array<double, 3> std_error;
};

/// Requires at least four samples.
Cumulants k_statistics(std::span<const double> xs);

/// LEVY_INFO_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

/// out[i] = f(i) for i < n, evaluated on up to worker_count() threads.
/// Results are stored by index, so the output never depends on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f)
{
    std::vector<std::optional<T>> slots(n);
    const std::size_t workers = std::min(worker_count(), n);
    auto fill = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) slots[i].emplace(f(i));
    };
    if (workers <= 1) {
        fill(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t lo = 0; lo < n; lo += chunk) {
            const std::size_t hi = std::min(n, lo + chunk);
            pool.emplace_back([&, lo, hi] {
                try {
                    fill(lo, hi);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

}  // namespace levy

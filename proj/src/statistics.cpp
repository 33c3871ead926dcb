#include "levy/statistics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "levy/error.hpp"

namespace levy {

namespace {

// k-statistics from power sums of n values.
std::array<double, 3> k_from_sums(double n, double s1, double s2, double s3)
{
    const double k1 = s1 / n;
    const double k2 = (n * s2 - s1 * s1) / (n * (n - 1.0));
    const double k3 =
        (n * n * s3 - 3.0 * n * s2 * s1 + 2.0 * s1 * s1 * s1) / (n * (n - 1.0) * (n - 2.0));
    return {k1, k2, k3};
}

}  // namespace

MeanEstimate mean_estimate(std::span<const double> xs)
{
    if (xs.size() < 2) throw Error(ErrorCode::TooFewSamples, "mean estimate needs two samples");
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double z_score(double diff, double se)
{
    if (se > 0.0) return diff / se;
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

Cumulants k_statistics(std::span<const double> xs)
{
    if (xs.size() < 4) throw Error(ErrorCode::TooFewSamples, "k-statistics need four samples");
    const std::size_t count = xs.size();
    const double n = static_cast<double>(count);
    double shift = 0.0;
    for (double v : xs) shift += v;
    shift /= n;

    // Centering first keeps the power sums well conditioned; k2 and k3 are
    // shift invariant and k1 is shifted back.
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (double v : xs) {
        const double y = v - shift;
        s1 += y;
        s2 += y * y;
        s3 += y * y * y;
    }
    Cumulants out{};
    out.k = k_from_sums(n, s1, s2, s3);
    out.k[0] += shift;

    std::array<double, 3> sum{}, sumsq{};
    std::vector<std::array<double, 3>> loo(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double y = xs[i] - shift;
        loo[i] = k_from_sums(n - 1.0, s1 - y, s2 - y * y, s3 - y * y * y);
        for (int r = 0; r < 3; ++r) sum[r] += loo[i][r];
    }
    for (int r = 0; r < 3; ++r) {
        const double mean = sum[r] / n;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = loo[i][r] - mean;
            sumsq[r] += d * d;
        }
        out.std_error[r] = std::sqrt((n - 1.0) / n * sumsq[r]);
    }
    return out;
}

std::size_t worker_count()
{
    if (const char* env = std::getenv("LEVY_INFO_THREADS")) {
        std::size_t value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc{} && ptr == end && value > 0) return value;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace levy

#include "levy/random.hpp"

#include <cmath>
#include <numbers>

#include "levy/error.hpp"

namespace levy {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t combine(std::uint64_t key, std::uint64_t value) noexcept
{
    return mix64(key ^ mix64(value + 0x632be59bd9b4e019ull));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t path, std::uint64_t substream)
    : key_(combine(combine(mix64(seed + kGolden), path), substream))
{
}

RandomStream RandomStream::substream(std::uint64_t index) const
{
    return RandomStream(FromKey{}, combine(key_, index + 0x2545f4914f6cdd1dull));
}

std::uint64_t RandomStream::next_u64() noexcept
{
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() noexcept
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() noexcept
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

double sample_gamma(double shape, RandomStream& rng)
{
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw Error(ErrorCode::InvalidParameter, "gamma shape must be positive");
    }
    if (shape < 1.0) {
        // G(k) = G(k + 1) U^(1/k); formed in log space so tiny shapes underflow to 0 cleanly.
        const double g = sample_gamma(shape + 1.0, rng);
        return std::exp(std::log(g) + std::log(rng.uniform()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::uint64_t sample_poisson(double mean, RandomStream& rng)
{
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw Error(ErrorCode::InvalidParameter, "poisson mean must be finite and nonnegative");
    }
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        const double u = rng.uniform();
        double p = std::exp(-mean);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf) {
            ++k;
            p *= mean / static_cast<double>(k);
            const double next = cdf + p;
            if (next == cdf) break;
            cdf = next;
        }
        return k;
    }
    // PTRS transformed rejection (Hormann 1993).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

double sample_inverse_gaussian(double mu, double shape, RandomStream& rng)
{
    if (!(mu > 0.0) || !(shape > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "inverse gaussian mean and shape must be positive");
    }
    const double n = rng.normal();
    const double r = mu * n * n / (2.0 * shape);
    // Smaller root of the quadratic, written as mu / (1 + r + sqrt(r (2 + r)))
    // to avoid cancellation when shape is small.
    const double x = mu / (1.0 + r + std::sqrt(r * (2.0 + r)));
    const double u = rng.uniform();
    if (u * (mu + x) <= mu) return x;
    return mu * (mu / x);
}

double sample_ig_increment(double a, double b, double dt, RandomStream& rng)
{
    if (!(a > 0.0) || !(b > 0.0) || !(dt > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "ig increment requires a, b, dt > 0");
    }
    const double at = a * dt;
    return sample_inverse_gaussian(at / b, at * at, rng);
}

std::uint64_t sample_logarithmic(double q, RandomStream& rng)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "logarithmic parameter must satisfy 0 < q < 1");
    }
    double u = rng.uniform();
    double p = -q / std::log1p(-q);
    std::uint64_t k = 1;
    while (u > p) {
        u -= p;
        ++k;
        p *= q * static_cast<double>(k - 1) / static_cast<double>(k);
        if (p == 0.0) break;
    }
    return k;
}

}  // namespace levy

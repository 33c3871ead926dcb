#pragma once

#include <cstdint>

namespace levy {

/// Counter-based random stream.
///
/// A stream is identified by a 64-bit key derived from (seed, path, substream);
/// the n-th draw is a pure function of (key, n), so results never depend on
/// the order in which streams are consumed. Child streams are derived with
/// substream() and are statistically independent of the parent.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t path = 0, std::uint64_t substream = 0);

    /// Independent child stream keyed by (this key, index).
    RandomStream substream(std::uint64_t index) const;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

    /// Standard normal via Box-Muller; the paired variate is cached.
    double normal() noexcept;

  private:
    struct FromKey {};
    RandomStream(FromKey, std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// SplitMix64 output function (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Samplers. Each one is exact in distribution.

/// Gamma(shape, scale 1): Marsaglia-Tsang, boosted by U^(1/shape) for shape < 1.
double sample_gamma(double shape, RandomStream& rng);

/// Poisson(mean): sequential inversion for small means, Hormann's PTRS otherwise.
std::uint64_t sample_poisson(double mean, RandomStream& rng);

/// Inverse Gaussian with mean mu and shape lambda (Michael-Schucany-Haas).
double sample_inverse_gaussian(double mu, double shape, RandomStream& rng);

/// One increment over dt of the IG(a, b) process with exponent a(b - sqrt(b^2 - 2 alpha)).
double sample_ig_increment(double a, double b, double dt, RandomStream& rng);

/// P(J = n) = -q^n / (n ln(1 - q)), n >= 1, by chop-down inversion.
std::uint64_t sample_logarithmic(double q, RandomStream& rng);

}  // namespace levy

#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "levy/noise_model.hpp"
#include "levy/prior.hpp"
#include "cases.hpp"

namespace levy::testing {

struct Moment {
    double value;
    double std_error;
};

inline Moment sample_mean(const std::vector<double>& xs)
{
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double v : xs) m += v;
    m /= n;
    double ss = 0.0;
    for (double v : xs) ss += (v - m) * (v - m);
    return {m, std::sqrt(ss / (n - 1.0) / n)};
}

/// Unbiased sample variance with the large-sample standard error
/// sqrt((m4 - s^4) / n).
inline Moment sample_variance(const std::vector<double>& xs)
{
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double v : xs) m += v;
    m /= n;
    double s2 = 0.0, s4 = 0.0;
    for (double v : xs) {
        const double d = (v - m) * (v - m);
        s2 += d;
        s4 += d * d;
    }
    const double var = s2 / (n - 1.0);
    const double m4 = s4 / n;
    return {var, std::sqrt(std::max(0.0, m4 - var * var) / n)};
}

/// |estimate - reference| within k standard errors.
inline ::testing::AssertionResult within_se(const Moment& m, double reference, double k = 3.0)
{
    const double z = (m.value - reference) / m.std_error;
    if (std::abs(z) <= k) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "estimate " << m.value << " vs " << reference
                                         << " (se " << m.std_error << ", z " << z << ")";
}

inline bool near_rel(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace levy::testing

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "levy/noise_model.hpp"
#include "levy/prior.hpp"

namespace levy {

/// One compared quantity. Informational rows (checked == false) carry a NaN
/// reference and z and never affect the verdict.
struct StudyRow {
    std::string quantity;
    double estimate;
    double reference;
    double std_error;
    double z;
    bool checked;
};

struct StudyReport {
    std::string name;
    std::vector<StudyRow> rows;
    double threshold;

    /// True iff every checked row has |z| <= threshold.
    bool passed() const;
    /// Largest |z| over checked rows.
    double max_abs_z() const;
};

struct StudyOptions {
    std::uint64_t seed = 42;
    std::size_t paths = 20000;
    double threshold = 3.5;
};

/// Mean squared error of xi_t / t against psi'(X), compared with E[psi''(X)] / t,
/// plus the empirical P(|I0(xi_t / t) - X| >= epsilon). Requires >= 1000 paths.
StudyReport convergence_study(const NoiseModel& model, const Prior& prior,
                              std::span<const double> times, double epsilon,
                              const StudyOptions& opts);

/// Under the weights exp(-X xi_t + psi(X) t) the pair (xi_t, X) should have
/// characteristic function exp(psi(i a) t) E[exp(i b X)]. Real and imaginary
/// parts are compared separately for every (a, b) pair.
StudyReport factorization_study(const NoiseModel& model, const Prior& prior,
                                std::span<const double> alpha_im, std::span<const double> beta_im,
                                double t, const StudyOptions& opts);

/// Mean and variance of xi_t simulated under the tilted model against the same
/// moments estimated under the fiducial model with weight exp(lambda xi_t - psi(lambda) t).
StudyReport esscher_consistency_study(const NoiseModel& model, double lambda, double t,
                                      const StudyOptions& opts);

/// First three k-statistics of xi_t at message x under every representation of
/// the family (variance gamma or negative binomial): each against the exact
/// cumulants psi^(k)(x) t, and pairwise between representations.
StudyReport representation_equivalence_study(const NoiseModel& model, double x, double t,
                                             const StudyOptions& opts);

/// Finite-horizon bridge at message x: means psi'(x) t and covariances
/// s (T - t) / T psi''(x) over the given times (all below the horizon).
StudyReport bridge_study(const NoiseModel& model, double x, double horizon,
                         std::span<const double> times, const StudyOptions& opts);

/// Mean of the innovations increments over `intervals` equal pieces of [0, t_max]
/// on a uniform grid with `steps` steps.
StudyReport innovations_study(const NoiseModel& model, const Prior& prior, double t_max,
                              std::size_t steps, std::size_t intervals, const StudyOptions& opts);

}  // namespace levy

#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "levy/noise_model.hpp"
#include "levy/prior.hpp"
#include "levy/simulate.hpp"

namespace levy {

/// Weights proportional to w_i exp(x_i xi - psi(x_i) t), normalized in log space.
/// Throws IncompatibleSupport, DegenerateWeights, or InvalidParameter for t < 0.
Posterior posterior_update(const Prior& prior, const NoiseModel& model, double xi, double t);

/// Restarted update over one more observation increment.
Posterior sequential_update(const Posterior& posterior, const NoiseModel& model, double dxi,
                            double dt);

/// Posterior mass on atoms x_i <= y.
double conditional_cdf(const Posterior& posterior, double y);

/// sum_i w_i g(x_i); throws NonFiniteValue.
double best_estimate(const Posterior& posterior, const std::function<double(double)>& g);

double posterior_mean(const Posterior& posterior);
double posterior_variance(const Posterior& posterior);

/// Filtered estimate of psi'(X).
double filtered_drift(const Posterior& posterior, const NoiseModel& model);

/// (xi + theta) / (t + (r - 1)/m): the filtered psi'(X) for gamma noise
/// (scale 1, rate m) when X = 1 - U with U ~ Gamma(shape r, rate theta).
/// Throws InvalidParameter unless r > 1, theta > 0, m > 0 and t >= 0.
double gamma_linear_filter(double theta, double r, double m, double xi, double t);

struct MessageEstimate {
    /// Inverse marginal exponent at xi / t, clamped to the closure of its range.
    double i0;
    bool clamped;
    double posterior_mean;
};

/// I0(y), with y outside the range of psi' clamped to the closure of the range;
/// an unattained bound maps to the matching end of the admissible set.
std::pair<double, bool> clamped_inverse_marginal(const NoiseModel& model, double y);

/// Requires t > 0.
MessageEstimate estimate_message(const Posterior& posterior, const NoiseModel& model, double xi,
                                 double t);

/// Posterior at every grid time of an observed trajectory, computed sequentially.
std::vector<Posterior> filter_trajectory(const Prior& prior, const NoiseModel& model,
                                         const TimeGrid& grid, std::span<const double> xi);

}  // namespace levy

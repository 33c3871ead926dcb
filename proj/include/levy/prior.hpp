#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "levy/noise_model.hpp"

namespace levy {

struct Atom {
    double x;
    double w;
    bool operator==(const Atom&) const = default;
};

/// Law of the message as weighted atoms: positions strictly increasing,
/// weights strictly positive and summing to one.
class Prior {
  public:
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    Interval support_hull() const noexcept;

    bool operator==(const Prior&) const = default;

  private:
    friend Prior prior_from_atoms(std::span<const Atom> points);
    std::vector<Atom> atoms_;
};

struct Observation {
    double xi = 0.0;
    double t = 0.0;
    bool operator==(const Observation&) const = default;
};

/// Conditional law of the message given an observation. Shares the atom
/// positions of the prior it came from; log_weights are normalized so that
/// exp(log_weights[i]) == atoms()[i].w.
class Posterior {
  public:
    /// The prior viewed as the posterior at t = 0.
    explicit Posterior(const Prior& prior);

    /// Builds a posterior from unnormalized log-weights (max-subtracted
    /// log-sum-exp normalization). Throws DegenerateWeights if no weight is finite.
    static Posterior from_log_weights(std::span<const double> positions,
                                      std::span<const double> log_weights, Observation obs);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& log_weights() const noexcept { return log_weights_; }
    const Observation& observation() const noexcept { return observation_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    bool operator==(const Posterior&) const = default;

  private:
    Posterior() = default;

    std::vector<Atom> atoms_;
    std::vector<double> log_weights_;
    Observation observation_;
};

/// Normalizes, sorts and merges exactly-equal positions by adding weights.
/// Throws EmptyPrior, NonPositiveWeight or NonFiniteValue.
Prior prior_from_atoms(std::span<const Atom> points);

/// Gauss-Legendre discretization of an (unnormalized) density on a bounded
/// interval. Nodes where the density vanishes are dropped.
Prior prior_from_density(const std::function<double(double)>& density, Interval interval,
                         std::size_t n);

/// Throws IncompatibleSupport unless every atom lies in the admissible set at
/// relative distance >= margin from each open finite boundary.
void check_compatibility(const Prior& prior, const NoiseModel& model, double margin = 1e-9);

/// sum_i w_i g(x_i); throws NonFiniteValue if any g(x_i) is not finite.
double prior_expectation(std::span<const Atom> atoms, const std::function<double(double)>& g);
double prior_expectation(const Prior& prior, const std::function<double(double)>& g);

}  // namespace levy

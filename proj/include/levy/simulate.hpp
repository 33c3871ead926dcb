#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "levy/noise_model.hpp"
#include "levy/prior.hpp"
#include "levy/random.hpp"

namespace levy {

/// Observation times: starts at 0, strictly increasing, finite.
class TimeGrid {
  public:
    /// Throws InvalidGrid if the invariants fail.
    explicit TimeGrid(std::vector<double> times);

    /// steps + 1 equally spaced points on [0, t_max].
    static TimeGrid uniform(double t_max, std::size_t steps);

    const std::vector<double>& times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t i) const noexcept { return times_[i]; }
    double back() const noexcept { return times_.back(); }

    bool operator==(const TimeGrid&) const = default;

  private:
    std::vector<double> times_;
};

struct InformationPath {
    TimeGrid grid;
    std::vector<double> values;
    /// The hidden draw of the message. Filtering never reads it.
    double message;
    NoiseModel model;
};

/// Atom x_i with probability w_i by inversion of the cumulative weights.
double sample_message(const Prior& prior, RandomStream& rng);

/// One increment over dt of the Levy process with the given (already tilted)
/// exponent.
double sample_increment(const NoiseModel& model, double dt, RandomStream& rng);

/// Path conditional on X = x. Interval i draws from rng.substream(i + 1).
/// Throws OutOfDomain if x is outside the admissible set.
InformationPath simulate_conditional_path(const NoiseModel& model, double x,
                                          const TimeGrid& grid, const RandomStream& rng);

/// Checks compatibility, draws X from rng.substream(0), then generates
/// conditionally independent increments.
InformationPath simulate_information_path(const NoiseModel& model, const Prior& prior,
                                          const TimeGrid& grid, const RandomStream& rng);

enum class Representation {
    VGSubordinated,
    VGScaledSubordinator,
    VGGammaDifference,
    NBSubordinated,
    NBCompound,
};

inline constexpr Representation kVGRepresentations[] = {
    Representation::VGSubordinated, Representation::VGScaledSubordinator,
    Representation::VGGammaDifference};
inline constexpr Representation kNBRepresentations[] = {Representation::NBSubordinated,
                                                        Representation::NBCompound};

std::string_view to_string(Representation rep) noexcept;

/// Path at fixed message x built from the named construction. Throws
/// UnsupportedRepresentation if rep does not belong to the model's family.
InformationPath simulate_alternative_representation(const NoiseModel& model, Representation rep,
                                                    double x, const TimeGrid& grid,
                                                    const RandomStream& rng);

/// Finite-horizon bridge ((T - t)/T) xi(tT/(T - t)). Every grid time must be
/// below T and map below time_cap (default 1e6 T); otherwise GridExceedsHorizon.
InformationPath simulate_bridge_path(const NoiseModel& model, const Prior& prior, double horizon,
                                     const TimeGrid& grid, const RandomStream& rng,
                                     double time_cap = 0.0);

}  // namespace levy

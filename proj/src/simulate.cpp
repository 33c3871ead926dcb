#include "levy/simulate.hpp"

#include <cmath>
#include <sstream>

#include "levy/error.hpp"

namespace levy {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

void require_admissible(const NoiseModel& model, double x)
{
    if (!std::isfinite(x) || !admissible_set(model).contains(x)) {
        std::ostringstream os;
        os.precision(17);
        os << "message " << x << " is outside the admissible set of " << describe(model);
        throw Error(ErrorCode::OutOfDomain, os.str());
    }
}

// Scales (k_up, k_down) of the two gamma processes whose difference is the
// VG process with parameters (m, mu, sigma).
std::pair<double, double> vg_gamma_scales(const params::VarianceGamma& p)
{
    const double root = std::sqrt(p.drift * p.drift + 2.0 * p.rate * p.volatility * p.volatility);
    return {(root + p.drift) / (2.0 * p.rate), (root - p.drift) / (2.0 * p.rate)};
}

double gamma_clock(double rate, double dt, RandomStream& rng)
{
    // Gamma subordinator with unit mean rate: shape m dt, scale 1/m.
    return sample_gamma(rate * dt, rng) / rate;
}

template <class Step>
InformationPath build_path(const NoiseModel& model, double x, const TimeGrid& grid,
                           const RandomStream& rng, Step step)
{
    std::vector<double> values(grid.size());
    values[0] = 0.0;
    double level = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        RandomStream interval = rng.substream(i + 1);
        level += step(grid[i] - grid[i - 1], interval);
        values[i] = level;
    }
    return InformationPath{grid, std::move(values), x, model};
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times))
{
    if (times_.empty() || times_.front() != 0.0) {
        throw Error(ErrorCode::InvalidGrid, "time grid must start at 0");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i]) || !(times_[i] > times_[i - 1])) {
            throw Error(ErrorCode::InvalidGrid, "time grid must be finite and strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t steps)
{
    if (steps == 0 || !(t_max > 0.0) || !std::isfinite(t_max)) {
        throw Error(ErrorCode::InvalidGrid, "uniform grid needs t_max > 0 and steps >= 1");
    }
    std::vector<double> times(steps + 1);
    const double n = static_cast<double>(steps);
    for (std::size_t i = 0; i <= steps; ++i) times[i] = t_max * (static_cast<double>(i) / n);
    times[steps] = t_max;
    return TimeGrid(std::move(times));
}

double sample_message(const Prior& prior, RandomStream& rng)
{
    const auto& atoms = prior.atoms();
    const double u = rng.uniform();
    double cum = 0.0;
    for (const auto& a : atoms) {
        cum += a.w;
        if (u < cum) return a.x;
    }
    return atoms.back().x;
}

double sample_increment(const NoiseModel& model, double dt, RandomStream& rng)
{
    if (dt == 0.0) return 0.0;
    return std::visit(
        Overloaded{
            [&](const params::Brownian& p) { return p.drift * dt + std::sqrt(dt) * rng.normal(); },
            [&](const params::Poisson& p) {
                return static_cast<double>(sample_poisson(p.rate * dt, rng));
            },
            [&](const params::Gamma& p) { return p.scale * sample_gamma(p.rate * dt, rng); },
            [&](const params::VarianceGamma& p) {
                const double clock = gamma_clock(p.rate, dt, rng);
                return p.drift * clock + p.volatility * std::sqrt(clock) * rng.normal();
            },
            [&](const params::NegativeBinomial& p) {
                const double clock = sample_gamma(p.rate * dt, rng);
                return static_cast<double>(sample_poisson(p.prob / (1.0 - p.prob) * clock, rng));
            },
            [&](const params::InverseGaussian& p) { return sample_ig_increment(p.a, p.b, dt, rng); },
            [&](const params::NormalInverseGaussian& p) {
                // xi = b F + W(F) with F an IG(m, sqrt(a^2 - b^2)) subordinator.
                const double beta = std::sqrt((p.a - p.b) * (p.a + p.b));
                const double clock = sample_ig_increment(p.rate, beta, dt, rng);
                return p.b * clock + std::sqrt(clock) * rng.normal();
            },
        },
        model.params());
}

InformationPath simulate_conditional_path(const NoiseModel& model, double x, const TimeGrid& grid,
                                          const RandomStream& rng)
{
    require_admissible(model, x);
    const NoiseModel tilted = esscher_transform(model, x);
    return build_path(model, x, grid, rng, [&](double dt, RandomStream& s) {
        return sample_increment(tilted, dt, s);
    });
}

InformationPath simulate_information_path(const NoiseModel& model, const Prior& prior,
                                          const TimeGrid& grid, const RandomStream& rng)
{
    check_compatibility(prior, model);
    RandomStream message_stream = rng.substream(0);
    const double x = sample_message(prior, message_stream);
    return simulate_conditional_path(model, x, grid, rng);
}

std::string_view to_string(Representation rep) noexcept
{
    switch (rep) {
        case Representation::VGSubordinated: return "vg-subordinated";
        case Representation::VGScaledSubordinator: return "vg-scaled-subordinator";
        case Representation::VGGammaDifference: return "vg-gamma-difference";
        case Representation::NBSubordinated: return "nb-subordinated";
        case Representation::NBCompound: return "nb-compound";
    }
    return "unknown";
}

InformationPath simulate_alternative_representation(const NoiseModel& model, Representation rep,
                                                    double x, const TimeGrid& grid,
                                                    const RandomStream& rng)
{
    const bool vg_rep = rep == Representation::VGSubordinated ||
                        rep == Representation::VGScaledSubordinator ||
                        rep == Representation::VGGammaDifference;
    const Family needed = vg_rep ? Family::VarianceGamma : Family::NegativeBinomial;
    if (model.family() != needed) {
        throw Error(ErrorCode::UnsupportedRepresentation,
                    std::string(to_string(rep)) + " does not apply to " + describe(model));
    }
    require_admissible(model, x);
    const NoiseModel tilted = esscher_transform(model, x);

    switch (rep) {
        case Representation::VGSubordinated:
        case Representation::NBSubordinated:
            return build_path(model, x, grid, rng, [&](double dt, RandomStream& s) {
                return sample_increment(tilted, dt, s);
            });
        case Representation::VGScaledSubordinator: {
            // The clock is rescaled by 1/D, D = 1 - mu x/m - sigma^2 x^2/(2m); the
            // Brownian part keeps its fiducial volatility.
            const auto& p = model.get<params::VarianceGamma>();
            const double sig2 = p.volatility * p.volatility;
            const double d = 1.0 - (p.drift * x + 0.5 * sig2 * x * x) / p.rate;
            const double drift = p.drift + sig2 * x;
            return build_path(model, x, grid, rng, [&](double dt, RandomStream& s) {
                const double clock = gamma_clock(p.rate, dt, s) / d;
                return drift * clock + p.volatility * std::sqrt(clock) * s.normal();
            });
        }
        case Representation::VGGammaDifference: {
            const auto& p = tilted.get<params::VarianceGamma>();
            const auto [up, down] = vg_gamma_scales(p);
            return build_path(model, x, grid, rng, [&](double dt, RandomStream& s) {
                const double g1 = sample_gamma(p.rate * dt, s);
                const double g2 = sample_gamma(p.rate * dt, s);
                return up * g1 - down * g2;
            });
        }
        case Representation::NBCompound: {
            const auto& p = tilted.get<params::NegativeBinomial>();
            const double jump_rate = -p.rate * std::log1p(-p.prob);
            return build_path(model, x, grid, rng, [&](double dt, RandomStream& s) {
                const std::uint64_t jumps = sample_poisson(jump_rate * dt, s);
                double total = 0.0;
                for (std::uint64_t k = 0; k < jumps; ++k) {
                    total += static_cast<double>(sample_logarithmic(p.prob, s));
                }
                return total;
            });
        }
    }
    throw Error(ErrorCode::UnsupportedRepresentation, "unknown representation");
}

InformationPath simulate_bridge_path(const NoiseModel& model, const Prior& prior, double horizon,
                                     const TimeGrid& grid, const RandomStream& rng,
                                     double time_cap)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw Error(ErrorCode::InvalidParameter, "bridge horizon must be positive and finite");
    }
    const double cap = time_cap > 0.0 ? time_cap : 1e6 * horizon;
    std::vector<double> clock(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (!(t < horizon)) {
            std::ostringstream os;
            os.precision(17);
            os << "grid time " << t << " is not below the horizon " << horizon;
            throw Error(ErrorCode::GridExceedsHorizon, os.str());
        }
        clock[i] = t * horizon / (horizon - t);
        if (clock[i] > cap) {
            std::ostringstream os;
            os.precision(17);
            os << "grid time " << t << " maps to " << clock[i] << ", beyond the cap " << cap;
            throw Error(ErrorCode::GridExceedsHorizon, os.str());
        }
    }
    InformationPath path =
        simulate_information_path(model, prior, TimeGrid(std::move(clock)), rng);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        path.values[i] *= (horizon - grid[i]) / horizon;
    }
    path.grid = grid;
    return path;
}

}  // namespace levy

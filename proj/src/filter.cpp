#include "levy/filter.hpp"

#include <cmath>

#include "levy/error.hpp"

namespace levy {

namespace {

std::vector<double> positions_of(const std::vector<Atom>& atoms)
{
    std::vector<double> xs;
    xs.reserve(atoms.size());
    for (const auto& a : atoms) xs.push_back(a.x);
    return xs;
}

}  // namespace

Posterior posterior_update(const Prior& prior, const NoiseModel& model, double xi, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t) || !std::isfinite(xi)) {
        throw Error(ErrorCode::InvalidParameter, "observation must be finite with t >= 0");
    }
    check_compatibility(prior, model);
    // At the origin the likelihood is identically one.
    if (t == 0.0 && xi == 0.0) return Posterior(prior);

    const auto& atoms = prior.atoms();
    std::vector<double> lw(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double x = atoms[i].x;
        lw[i] = std::log(atoms[i].w) + x * xi - fiducial_exponent(model, x) * t;
    }
    return Posterior::from_log_weights(positions_of(atoms), lw, Observation{xi, t});
}

Posterior sequential_update(const Posterior& posterior, const NoiseModel& model, double dxi,
                            double dt)
{
    if (!(dt >= 0.0) || !std::isfinite(dt) || !std::isfinite(dxi)) {
        throw Error(ErrorCode::InvalidParameter, "observation increment must be finite with dt >= 0");
    }
    const auto& atoms = posterior.atoms();
    const auto& prev = posterior.log_weights();
    const Observation obs{posterior.observation().xi + dxi, posterior.observation().t + dt};
    if (dt == 0.0 && dxi == 0.0) return posterior;
    std::vector<double> lw(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double x = atoms[i].x;
        lw[i] = prev[i] + x * dxi - fiducial_exponent(model, x) * dt;
    }
    return Posterior::from_log_weights(positions_of(atoms), lw, obs);
}

double conditional_cdf(const Posterior& posterior, double y)
{
    double sum = 0.0;
    for (const auto& a : posterior.atoms()) {
        if (a.x > y) break;
        sum += a.w;
    }
    return sum;
}

double best_estimate(const Posterior& posterior, const std::function<double(double)>& g)
{
    return prior_expectation(posterior.atoms(), g);
}

double posterior_mean(const Posterior& posterior)
{
    double sum = 0.0;
    for (const auto& a : posterior.atoms()) sum += a.w * a.x;
    return sum;
}

double posterior_variance(const Posterior& posterior)
{
    const double mean = posterior_mean(posterior);
    double sum = 0.0;
    for (const auto& a : posterior.atoms()) sum += a.w * (a.x - mean) * (a.x - mean);
    return sum;
}

double filtered_drift(const Posterior& posterior, const NoiseModel& model)
{
    double sum = 0.0;
    for (const auto& a : posterior.atoms()) {
        sum += a.w * exponent_derivatives(model, a.x).first;
    }
    return sum;
}

double gamma_linear_filter(double theta, double r, double m, double xi, double t)
{
    if (!(r > 1.0) || !(theta > 0.0) || !(m > 0.0) || !(t >= 0.0)) {
        throw Error(ErrorCode::InvalidParameter,
                    "gamma linear filter needs r > 1, theta > 0, m > 0, t >= 0");
    }
    return (xi + theta) / (t + (r - 1.0) / m);
}

std::pair<double, bool> clamped_inverse_marginal(const NoiseModel& model, double y)
{
    const Interval range = marginal_range(model);
    if (range.contains(y)) return {inverse_marginal(model, y), false};
    const Interval dom = admissible_set(model);
    if (y <= range.lo) return {range.lo_open ? dom.lo : inverse_marginal(model, range.lo), true};
    return {range.hi_open ? dom.hi : inverse_marginal(model, range.hi), true};
}

MessageEstimate estimate_message(const Posterior& posterior, const NoiseModel& model, double xi,
                                 double t)
{
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParameter, "message estimate needs t > 0");
    const auto [i0, clamped] = clamped_inverse_marginal(model, xi / t);
    return MessageEstimate{i0, clamped, posterior_mean(posterior)};
}

std::vector<Posterior> filter_trajectory(const Prior& prior, const NoiseModel& model,
                                         const TimeGrid& grid, std::span<const double> xi)
{
    if (xi.size() != grid.size()) {
        throw Error(ErrorCode::InvalidParameter, "observations and grid differ in length");
    }
    check_compatibility(prior, model);
    std::vector<Posterior> out;
    out.reserve(grid.size());
    out.push_back(posterior_update(prior, model, xi[0], grid[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        out.push_back(sequential_update(out.back(), model, xi[i] - xi[i - 1], grid[i] - grid[i - 1]));
    }
    return out;
}

}  // namespace levy

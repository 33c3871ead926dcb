#include "levy/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

namespace levy {

Interval Prior::support_hull() const noexcept
{
    return Interval{atoms_.front().x, atoms_.back().x, false, false};
}

Prior prior_from_atoms(std::span<const Atom> points)
{
    if (points.empty()) throw Error(ErrorCode::EmptyPrior, "prior needs at least one atom");
    std::vector<Atom> atoms(points.begin(), points.end());
    for (const auto& a : atoms) {
        if (!std::isfinite(a.x) || !std::isfinite(a.w)) {
            throw Error(ErrorCode::NonFiniteValue, "prior atoms must be finite");
        }
        if (!(a.w > 0.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "atom at x = " << a.x << " has weight " << a.w;
            throw Error(ErrorCode::NonPositiveWeight, os.str());
        }
    }
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& l, const Atom& r) { return l.x < r.x; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const auto& a : atoms) {
        if (!merged.empty() && merged.back().x == a.x) {
            merged.back().w += a.w;
        } else {
            merged.push_back(a);
        }
    }
    double total = 0.0;
    for (const auto& a : merged) total += a.w;
    // Weights already normalized to within the invariant tolerance are kept
    // bit-for-bit, so rebuilding a prior from its own atoms is the identity.
    if (std::abs(total - 1.0) > 1e-12) {
        for (auto& a : merged) a.w /= total;
    }
    Prior prior;
    prior.atoms_ = std::move(merged);
    return prior;
}

Prior prior_from_density(const std::function<double(double)>& density, Interval interval,
                         std::size_t n)
{
    if (n < 2) throw Error(ErrorCode::InvalidParameter, "density discretization needs n >= 2");
    if (!interval.bounded()) {
        throw Error(ErrorCode::InvalidParameter, "density discretization needs a bounded interval");
    }
    const auto rule = gauss_legendre(n, interval.lo, interval.hi);
    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = density(rule.nodes[i]);
        if (!std::isfinite(f)) {
            throw Error(ErrorCode::NonFiniteValue, "density is not finite at a quadrature node");
        }
        if (f < 0.0) throw Error(ErrorCode::NonPositiveWeight, "density is negative at a quadrature node");
        const double w = f * rule.weights[i];
        if (w > 0.0) atoms.push_back({rule.nodes[i], w});
    }
    if (atoms.empty()) throw Error(ErrorCode::ZeroMass, "density integrates to zero");
    return prior_from_atoms(atoms);
}

void check_compatibility(const Prior& prior, const NoiseModel& model, double margin)
{
    if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidParameter, "margin must be nonnegative");
    const Interval dom = admissible_set(model);
    auto too_close = [&](double x, double bound, bool open) {
        if (!open || !std::isfinite(bound)) return false;
        return std::abs(x - bound) / std::max(1.0, std::abs(bound)) < margin;
    };
    std::vector<double> bad;
    for (const auto& a : prior.atoms()) {
        if (!dom.contains(a.x) || too_close(a.x, dom.lo, dom.lo_open) ||
            too_close(a.x, dom.hi, dom.hi_open)) {
            bad.push_back(a.x);
        }
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "atoms outside the admissible set of " << describe(model) << ":";
        for (std::size_t i = 0; i < bad.size() && i < 10; ++i) os << ' ' << bad[i];
        if (bad.size() > 10) os << " ... (" << bad.size() << " total)";
        throw Error(ErrorCode::IncompatibleSupport, os.str());
    }
}

double prior_expectation(std::span<const Atom> atoms, const std::function<double(double)>& g)
{
    double sum = 0.0;
    for (const auto& a : atoms) {
        const double v = g(a.x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "integrand is not finite at x = " << a.x;
            throw Error(ErrorCode::NonFiniteValue, os.str());
        }
        sum += a.w * v;
    }
    return sum;
}

double prior_expectation(const Prior& prior, const std::function<double(double)>& g)
{
    return prior_expectation(prior.atoms(), g);
}

Posterior::Posterior(const Prior& prior) : atoms_(prior.atoms())
{
    log_weights_.reserve(atoms_.size());
    for (const auto& a : atoms_) log_weights_.push_back(std::log(a.w));
}

Posterior Posterior::from_log_weights(std::span<const double> positions,
                                      std::span<const double> log_weights, Observation obs)
{
    if (positions.size() != log_weights.size() || positions.empty()) {
        throw Error(ErrorCode::InvalidParameter, "positions and log-weights must be nonempty and aligned");
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (double lw : log_weights) {
        if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
            throw Error(ErrorCode::DegenerateWeights, "log-weight is NaN or +inf");
        }
        peak = std::max(peak, lw);
    }
    if (!std::isfinite(peak)) {
        throw Error(ErrorCode::DegenerateWeights, "every log-weight is -inf");
    }
    double sum = 0.0;
    for (double lw : log_weights) sum += std::exp(lw - peak);
    const double log_norm = peak + std::log(sum);

    Posterior post;
    post.observation_ = obs;
    post.atoms_.reserve(positions.size());
    post.log_weights_.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double lw = log_weights[i] - log_norm;
        post.log_weights_.push_back(lw);
        post.atoms_.push_back({positions[i], std::exp(lw)});
    }
    return post;
}

}  // namespace levy

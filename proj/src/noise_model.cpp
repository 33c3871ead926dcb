#include "levy/noise_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "levy/error.hpp"

namespace levy {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw Error(ErrorCode::InvalidParameter, what);
    }
}

bool finite(double v) { return std::isfinite(v); }

void validate(const NoiseModel::Params& p)
{
    std::visit(
        Overloaded{
            [](const params::Brownian& b) { require(finite(b.drift), "brownian drift must be finite"); },
            [](const params::Poisson& b) {
                require(finite(b.rate) && b.rate > 0, "poisson rate m must satisfy m > 0");
            },
            [](const params::Gamma& g) {
                require(finite(g.rate) && g.rate > 0, "gamma rate m must satisfy m > 0");
                require(finite(g.scale) && g.scale > 0, "gamma scale kappa must satisfy kappa > 0");
            },
            [](const params::VarianceGamma& v) {
                require(finite(v.rate) && v.rate > 0, "variance-gamma rate m must satisfy m > 0");
                require(finite(v.drift), "variance-gamma drift mu must be finite");
                require(finite(v.volatility) && v.volatility > 0,
                        "variance-gamma volatility sigma must satisfy sigma > 0");
            },
            [](const params::NegativeBinomial& n) {
                require(finite(n.rate) && n.rate > 0, "negative-binomial rate m must satisfy m > 0");
                require(finite(n.prob) && n.prob > 0 && n.prob < 1,
                        "negative-binomial probability q must satisfy 0 < q < 1");
            },
            [](const params::InverseGaussian& g) {
                require(finite(g.a) && g.a > 0, "inverse-gaussian a must satisfy a > 0");
                require(finite(g.b) && g.b > 0, "inverse-gaussian b must satisfy b > 0");
            },
            [](const params::NormalInverseGaussian& n) {
                require(finite(n.a) && n.a > 0, "nig a must satisfy a > 0");
                require(finite(n.b) && std::abs(n.b) < n.a, "nig b must satisfy |b| < a");
                require(finite(n.rate) && n.rate > 0, "nig rate m must satisfy m > 0");
            },
        },
        p);
}

/// Scales (k_up, k_down) of the gamma-difference representation of a VG law.
std::pair<double, double> vg_scales(const params::VarianceGamma& v)
{
    const double m = v.rate;
    const double root = std::sqrt(v.drift * v.drift + 2.0 * m * v.volatility * v.volatility);
    return {(v.drift + root) / (2.0 * m), (root - v.drift) / (2.0 * m)};
}

std::string domain_message(const NoiseModel& model, double re)
{
    std::ostringstream os;
    os.precision(17);
    os << "Re(alpha) = " << re << " outside the admissible set of " << describe(model);
    return os.str();
}

void require_in_domain(const NoiseModel& model, double re)
{
    if (!admissible_set(model).contains(re)) {
        throw Error(ErrorCode::OutOfDomain, domain_message(model, re));
    }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Family family) noexcept
{
    switch (family) {
    case Family::Brownian: return "brownian";
    case Family::Poisson: return "poisson";
    case Family::Gamma: return "gamma";
    case Family::VarianceGamma: return "variance-gamma";
    case Family::NegativeBinomial: return "negative-binomial";
    case Family::InverseGaussian: return "inverse-gaussian";
    case Family::NormalInverseGaussian: return "normal-inverse-gaussian";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::replace(lower.begin(), lower.end(), '_', '-');
    if (lower == "vg") return Family::VarianceGamma;
    if (lower == "nb") return Family::NegativeBinomial;
    if (lower == "ig") return Family::InverseGaussian;
    if (lower == "nig") return Family::NormalInverseGaussian;
    for (Family f : kAllFamilies) {
        if (lower == to_string(f)) return f;
    }
    return std::nullopt;
}

bool Interval::contains(double x) const noexcept
{
    if (std::isnan(x)) return false;
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

NoiseModel::NoiseModel(Params p) : params_(std::move(p)) { validate(params_); }

std::vector<double> NoiseModel::parameter_list() const
{
    return std::visit(
        Overloaded{
            [](const params::Brownian& b) {
                return b.drift == 0.0 ? std::vector<double>{} : std::vector<double>{b.drift};
            },
            [](const params::Poisson& p) { return std::vector<double>{p.rate}; },
            [](const params::Gamma& g) { return std::vector<double>{g.rate, g.scale}; },
            [](const params::VarianceGamma& v) {
                return v.standard() ? std::vector<double>{v.rate}
                                    : std::vector<double>{v.rate, v.drift, v.volatility};
            },
            [](const params::NegativeBinomial& n) { return std::vector<double>{n.rate, n.prob}; },
            [](const params::InverseGaussian& g) { return std::vector<double>{g.a, g.b}; },
            [](const params::NormalInverseGaussian& n) {
                return std::vector<double>{n.a, n.b, n.rate};
            },
        },
        params_);
}

std::string describe(const NoiseModel& model)
{
    std::ostringstream os;
    os.precision(17);
    os << to_string(model.family()) << '(';
    const auto list = model.parameter_list();
    for (std::size_t i = 0; i < list.size(); ++i) {
        os << (i ? ", " : "") << list[i];
    }
    os << ')';
    return os.str();
}

NoiseModel make_noise_model(Family family, std::span<const double> p)
{
    auto arity = [&](std::initializer_list<std::size_t> allowed) {
        if (std::find(allowed.begin(), allowed.end(), p.size()) == allowed.end()) {
            std::ostringstream os;
            os << to_string(family) << " expects ";
            bool first = true;
            for (auto n : allowed) {
                os << (first ? "" : " or ") << n;
                first = false;
            }
            os << " parameters, got " << p.size();
            throw Error(ErrorCode::InvalidParameter, os.str());
        }
    };
    switch (family) {
    case Family::Brownian:
        arity({0, 1});
        return NoiseModel(params::Brownian{p.empty() ? 0.0 : p[0]});
    case Family::Poisson:
        arity({1});
        return NoiseModel(params::Poisson{p[0]});
    case Family::Gamma:
        arity({2});
        return NoiseModel(params::Gamma{p[0], p[1]});
    case Family::VarianceGamma:
        arity({1, 3});
        if (p.size() == 1) return NoiseModel(params::VarianceGamma{p[0]});
        return NoiseModel(params::VarianceGamma{p[0], p[1], p[2]});
    case Family::NegativeBinomial:
        arity({2});
        return NoiseModel(params::NegativeBinomial{p[0], p[1]});
    case Family::InverseGaussian:
        arity({2});
        return NoiseModel(params::InverseGaussian{p[0], p[1]});
    case Family::NormalInverseGaussian:
        arity({3});
        return NoiseModel(params::NormalInverseGaussian{p[0], p[1], p[2]});
    }
    throw Error(ErrorCode::InvalidParameter, "unknown family");
}

Interval admissible_set(const NoiseModel& model)
{
    return std::visit(
        Overloaded{
            [](const params::Brownian&) { return Interval{-kInf, kInf, true, true}; },
            [](const params::Poisson&) { return Interval{-kInf, kInf, true, true}; },
            [](const params::Gamma& g) { return Interval{-kInf, 1.0 / g.scale, true, true}; },
            [](const params::VarianceGamma& v) {
                const auto [up, down] = vg_scales(v);
                return Interval{-1.0 / down, 1.0 / up, true, true};
            },
            [](const params::NegativeBinomial& n) {
                return Interval{-kInf, -std::log(n.prob), true, true};
            },
            // The exponent is analytic below zero as well, but messages for
            // this noise type are restricted to [0, b^2/2).
            [](const params::InverseGaussian& g) { return Interval{0.0, 0.5 * g.b * g.b, false, true}; },
            [](const params::NormalInverseGaussian& n) {
                return Interval{-n.a - n.b, n.a - n.b, true, true};
            },
        },
        model.params());
}

Interval marginal_range(const NoiseModel& model)
{
    switch (model.family()) {
    case Family::Brownian:
    case Family::VarianceGamma:
    case Family::NormalInverseGaussian: return Interval{-kInf, kInf, true, true};
    case Family::Poisson:
    case Family::Gamma:
    case Family::NegativeBinomial: return Interval{0.0, kInf, true, true};
    case Family::InverseGaussian: {
        const auto& g = model.get<params::InverseGaussian>();
        return Interval{g.a / g.b, kInf, false, true};
    }
    }
    return Interval{-kInf, kInf, true, true};
}

Complex fiducial_exponent(const NoiseModel& model, Complex alpha)
{
    require_in_domain(model, alpha.real());
    const Complex one(1.0, 0.0);
    return std::visit(
        Overloaded{
            [&](const params::Brownian& b) { return b.drift * alpha + 0.5 * alpha * alpha; },
            [&](const params::Poisson& p) { return p.rate * (std::exp(alpha) - one); },
            [&](const params::Gamma& g) { return -g.rate * std::log(one - g.scale * alpha); },
            [&](const params::VarianceGamma& v) {
                const double m = v.rate;
                const double s2 = v.volatility * v.volatility;
                return -m * std::log(one - v.drift * alpha / m - s2 * alpha * alpha / (2.0 * m));
            },
            [&](const params::NegativeBinomial& n) {
                return n.rate * (std::log1p(-n.prob) - std::log(one - n.prob * std::exp(alpha)));
            },
            [&](const params::InverseGaussian& g) {
                // a (b - sqrt(b^2 - 2 alpha)) rewritten without cancellation.
                const Complex root = std::sqrt(g.b * g.b - 2.0 * alpha);
                return g.a * 2.0 * alpha / (g.b + root);
            },
            [&](const params::NormalInverseGaussian& n) {
                const double base = std::sqrt(n.a * n.a - n.b * n.b);
                const Complex shifted = n.b + alpha;
                const Complex root = std::sqrt(n.a * n.a - shifted * shifted);
                return n.rate * alpha * (2.0 * n.b + alpha) / (base + root);
            },
        },
        model.params());
}

double fiducial_exponent(const NoiseModel& model, double alpha)
{
    require_in_domain(model, alpha);
    return std::visit(
        Overloaded{
            [&](const params::Brownian& b) { return b.drift * alpha + 0.5 * alpha * alpha; },
            [&](const params::Poisson& p) { return p.rate * std::expm1(alpha); },
            [&](const params::Gamma& g) { return -g.rate * std::log1p(-g.scale * alpha); },
            [&](const params::VarianceGamma& v) {
                const double m = v.rate;
                const double s2 = v.volatility * v.volatility;
                return -m * std::log1p(-v.drift * alpha / m - s2 * alpha * alpha / (2.0 * m));
            },
            [&](const params::NegativeBinomial& n) {
                return n.rate * (std::log1p(-n.prob) - std::log1p(-n.prob * std::exp(alpha)));
            },
            [&](const params::InverseGaussian& g) {
                return g.a * 2.0 * alpha / (g.b + std::sqrt(g.b * g.b - 2.0 * alpha));
            },
            [&](const params::NormalInverseGaussian& n) {
                const double base = std::sqrt(n.a * n.a - n.b * n.b);
                const double shifted = n.b + alpha;
                const double root = std::sqrt(n.a * n.a - shifted * shifted);
                return n.rate * alpha * (2.0 * n.b + alpha) / (base + root);
            },
        },
        model.params());
}

ExponentDerivatives exponent_derivatives(const NoiseModel& model, double alpha)
{
    require_in_domain(model, alpha);
    return std::visit(
        Overloaded{
            [&](const params::Brownian& b) { return ExponentDerivatives{b.drift + alpha, 1.0}; },
            [&](const params::Poisson& p) {
                const double v = p.rate * std::exp(alpha);
                return ExponentDerivatives{v, v};
            },
            [&](const params::Gamma& g) {
                const double d = 1.0 - g.scale * alpha;
                return ExponentDerivatives{g.rate * g.scale / d, g.rate * g.scale * g.scale / (d * d)};
            },
            [&](const params::VarianceGamma& v) {
                const double m = v.rate;
                const double s2 = v.volatility * v.volatility;
                const double g = 1.0 - v.drift * alpha / m - s2 * alpha * alpha / (2.0 * m);
                const double h = v.drift + s2 * alpha;
                return ExponentDerivatives{h / g, s2 / g + h * h / (m * g * g)};
            },
            [&](const params::NegativeBinomial& n) {
                const double u = n.prob * std::exp(alpha);
                const double d = 1.0 - u;
                return ExponentDerivatives{n.rate * u / d, n.rate * u / (d * d)};
            },
            [&](const params::InverseGaussian& g) {
                const double s = std::sqrt(g.b * g.b - 2.0 * alpha);
                return ExponentDerivatives{g.a / s, g.a / (s * s * s)};
            },
            [&](const params::NormalInverseGaussian& n) {
                const double shifted = n.b + alpha;
                const double r = std::sqrt(n.a * n.a - shifted * shifted);
                return ExponentDerivatives{n.rate * shifted / r, n.rate * n.a * n.a / (r * r * r)};
            },
        },
        model.params());
}

double exponent_third_derivative(const NoiseModel& model, double alpha)
{
    require_in_domain(model, alpha);
    return std::visit(
        Overloaded{
            [&](const params::Brownian&) { return 0.0; },
            [&](const params::Poisson& p) { return p.rate * std::exp(alpha); },
            [&](const params::Gamma& g) {
                const double d = 1.0 - g.scale * alpha;
                return 2.0 * g.rate * std::pow(g.scale / d, 3);
            },
            [&](const params::VarianceGamma& v) {
                const double m = v.rate;
                const double s2 = v.volatility * v.volatility;
                const double g = 1.0 - v.drift * alpha / m - s2 * alpha * alpha / (2.0 * m);
                const double h = v.drift + s2 * alpha;
                return 3.0 * s2 * h / (m * g * g) + 2.0 * h * h * h / (m * m * g * g * g);
            },
            [&](const params::NegativeBinomial& n) {
                const double u = n.prob * std::exp(alpha);
                const double d = 1.0 - u;
                return n.rate * u * (1.0 + u) / (d * d * d);
            },
            [&](const params::InverseGaussian& g) {
                const double s = std::sqrt(g.b * g.b - 2.0 * alpha);
                return 3.0 * g.a / std::pow(s, 5);
            },
            [&](const params::NormalInverseGaussian& n) {
                const double shifted = n.b + alpha;
                const double r = std::sqrt(n.a * n.a - shifted * shifted);
                return 3.0 * n.rate * n.a * n.a * shifted / std::pow(r, 5);
            },
        },
        model.params());
}

namespace {

/// Solves psi'(alpha) = y on the admissible set using Newton steps inside a
/// bracket that is kept valid by bisection.
double newton_inverse(const NoiseModel& model, double y)
{
    const Interval dom = admissible_set(model);
    auto deriv = [&](double a) { return exponent_derivatives(model, a).first; };

    // Bracket expansion from the origin. Finite open ends are approached
    // geometrically; infinite ends are doubled outward.
    auto step_toward = [](double bound, int k) {
        if (std::isfinite(bound)) return bound * (1.0 - std::ldexp(1.0, -k));
        return std::copysign(std::ldexp(1.0, k - 1), bound);
    };

    double lo = 0.0;
    double hi = 0.0;
    const double at_zero = deriv(0.0);
    if (at_zero == y) return 0.0;
    constexpr int kMaxExpand = 1100;
    if (at_zero < y) {
        int k = 1;
        hi = step_toward(dom.hi, k);
        while (deriv(hi) < y) {
            lo = hi;
            if (++k > kMaxExpand || !dom.contains_interior(step_toward(dom.hi, k)) ||
                step_toward(dom.hi, k) == hi) {
                throw Error(ErrorCode::OutOfRange, "psi' does not attain the requested value");
            }
            hi = step_toward(dom.hi, k);
        }
    } else {
        if (!dom.lo_open && dom.lo == 0.0) {
            throw Error(ErrorCode::OutOfRange, "value below the range of psi'");
        }
        int k = 1;
        lo = step_toward(dom.lo, k);
        while (deriv(lo) > y) {
            hi = lo;
            if (++k > kMaxExpand || !dom.contains_interior(step_toward(dom.lo, k)) ||
                step_toward(dom.lo, k) == lo) {
                throw Error(ErrorCode::OutOfRange, "psi' does not attain the requested value");
            }
            lo = step_toward(dom.lo, k);
        }
    }

    const double tol = 1e-12 * std::max(1.0, std::abs(y));
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const auto [d1, d2] = exponent_derivatives(model, x);
        const double r = d1 - y;
        if (r == 0.0) return x;
        if (r < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        double next = x - r / d2;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            if (std::abs(deriv(x) - y) <= tol) return x;
            break;
        }
    }
    if (std::abs(deriv(x) - y) <= tol) return x;
    throw Error(ErrorCode::OutOfRange, "inverse of psi' did not converge within 100 iterations");
}

}  // namespace

double inverse_marginal(const NoiseModel& model, double y)
{
    const Interval range = marginal_range(model);
    if (!range.contains(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "y = " << y << " is not attained by psi' of " << describe(model);
        throw Error(ErrorCode::OutOfRange, os.str());
    }
    switch (model.family()) {
    case Family::Brownian: return y - model.get<params::Brownian>().drift;
    case Family::Poisson: return std::log(y / model.get<params::Poisson>().rate);
    case Family::Gamma: {
        const auto& g = model.get<params::Gamma>();
        return 1.0 / g.scale - g.rate / y;
    }
    case Family::InverseGaussian:
        if (y == range.lo) return 0.0;
        return newton_inverse(model, y);
    default: return newton_inverse(model, y);
    }
}

Complex conditional_exponent(const NoiseModel& model, double x, Complex alpha)
{
    require_in_domain(model, x);
    return fiducial_exponent(model, alpha + x) - fiducial_exponent(model, Complex(x, 0.0));
}

NoiseModel esscher_transform(const NoiseModel& model, double lambda)
{
    require_in_domain(model, lambda);
    if (lambda == 0.0) return model;
    return std::visit(
        Overloaded{
            [&](const params::Brownian& b) { return NoiseModel(params::Brownian{b.drift + lambda}); },
            [&](const params::Poisson& p) { return NoiseModel(params::Poisson{p.rate * std::exp(lambda)}); },
            [&](const params::Gamma& g) {
                return NoiseModel(params::Gamma{g.rate, g.scale / (1.0 - g.scale * lambda)});
            },
            [&](const params::VarianceGamma& v) {
                const double m = v.rate;
                const double s2 = v.volatility * v.volatility;
                const double d = 1.0 - v.drift * lambda / m - s2 * lambda * lambda / (2.0 * m);
                return NoiseModel(
                    params::VarianceGamma{m, (v.drift + s2 * lambda) / d, v.volatility / std::sqrt(d)});
            },
            [&](const params::NegativeBinomial& n) {
                return NoiseModel(params::NegativeBinomial{n.rate, n.prob * std::exp(lambda)});
            },
            [&](const params::InverseGaussian& g) {
                return NoiseModel(params::InverseGaussian{g.a, std::sqrt(g.b * g.b - 2.0 * lambda)});
            },
            [&](const params::NormalInverseGaussian& n) {
                return NoiseModel(params::NormalInverseGaussian{n.a, n.b + lambda, n.rate});
            },
        },
        model.params());
}

// ---------------------------------------------------------------------------

double levy_density(const LevyMeasure& nu, double z)
{
    return std::visit(
        Overloaded{
            [](const measure::None&) { return 0.0; },
            [](const measure::Atomic&) -> double {
                throw Error(ErrorCode::InvalidParameter, "atomic Levy measure has no density");
            },
            [&](const measure::Gamma& g) { return z > 0 ? g.rate / z * std::exp(-z / g.scale) : 0.0; },
            [&](const measure::TwoSidedGamma& g) {
                if (z > 0) return g.rate / z * std::exp(-z / g.scale_up);
                if (z < 0) return g.rate / -z * std::exp(z / g.scale_down);
                return 0.0;
            },
            [&](const measure::InverseGaussian& g) {
                if (z <= 0) return 0.0;
                return g.a / std::sqrt(2.0 * std::numbers::pi) * std::pow(z, -1.5) *
                       std::exp(-0.5 * g.b * g.b * z);
            },
            [&](const measure::NormalInverseGaussian& n) {
                if (z == 0) return 0.0;
                const double az = std::abs(z);
                const double k1 = boost::math::cyl_bessel_k(1, n.a * az);
                if (k1 == 0.0) return 0.0;
                return n.rate * n.a / std::numbers::pi * std::exp(n.b * z) * k1 / az;
            },
        },
        nu);
}

CharacteristicTriplet characteristics(const NoiseModel& model)
{
    return std::visit(
        Overloaded{
            [](const params::Brownian& b) {
                return CharacteristicTriplet{b.drift, 1.0, measure::None{}};
            },
            [](const params::Poisson& p) {
                // Unit jumps sit outside {|z| < 1}, so there is no compensation.
                return CharacteristicTriplet{0.0, 0.0, measure::Atomic{{{1.0, p.rate}}, p.rate}};
            },
            [](const params::Gamma& g) {
                const double p = -g.rate * g.scale * std::expm1(-1.0 / g.scale);
                return CharacteristicTriplet{p, 0.0, measure::Gamma{g.rate, g.scale}};
            },
            [](const params::VarianceGamma& v) {
                const auto [up, down] = vg_scales(v);
                const double p =
                    -v.rate * up * std::expm1(-1.0 / up) + v.rate * down * std::expm1(-1.0 / down);
                return CharacteristicTriplet{p, 0.0, measure::TwoSidedGamma{v.rate, up, down}};
            },
            [](const params::NegativeBinomial& n) {
                const double total = -n.rate * std::log1p(-n.prob);
                measure::Atomic atoms{{}, total};
                // Stop once the remaining tail, bounded by mass / (1 - q), is
                // below 1e-17 of the total.
                double power = 1.0;
                for (int k = 1;; ++k) {
                    power *= n.prob;
                    const double mass = n.rate * power / k;
                    if (mass == 0.0) break;
                    atoms.atoms.push_back({static_cast<double>(k), mass});
                    if (mass < 1e-17 * total * (1.0 - n.prob)) break;
                }
                return CharacteristicTriplet{0.0, 0.0, std::move(atoms)};
            },
            [](const params::InverseGaussian& g) {
                const double p = g.a * std::erf(g.b / std::numbers::sqrt2) / g.b;
                return CharacteristicTriplet{p, 0.0, measure::InverseGaussian{g.a, g.b}};
            },
            [](const params::NormalInverseGaussian& n) {
                // p = E[xi_1] - int_{|z| >= 1} z nu(dz); the tail integral has
                // no elementary closed form.
                const double mean = n.rate * n.b / std::sqrt(n.a * n.a - n.b * n.b);
                boost::math::quadrature::exp_sinh<double> integrator;
                auto tail = [&](double z) {
                    const double k1 = boost::math::cyl_bessel_k(1, n.a * z);
                    return k1 == 0.0 ? 0.0 : 2.0 * std::sinh(n.b * z) * k1;
                };
                const double integral = integrator.integrate(tail, 1.0, kInf);
                const double p = mean - n.rate * n.a / std::numbers::pi * integral;
                return CharacteristicTriplet{p, 0.0, measure::NormalInverseGaussian{n.a, n.b, n.rate}};
            },
        },
        model.params());
}

CharacteristicTriplet tilted_characteristics(const NoiseModel& model, double x)
{
    if (!admissible_set(model).contains_interior(x) && x != 0.0) {
        throw Error(ErrorCode::OutOfDomain, domain_message(model, x));
    }
    return characteristics(esscher_transform(model, x));
}

Complex levy_khintchine_exponent(const CharacteristicTriplet& triplet, Complex alpha)
{
    Complex value = triplet.drift * alpha + 0.5 * triplet.gaussian * alpha * alpha;
    std::visit(Overloaded{
                   [](const measure::None&) {},
                   [&](const measure::Atomic& a) {
                       for (const auto& atom : a.atoms) {
                           Complex jump = std::exp(alpha * atom.z) - 1.0;
                           if (std::abs(atom.z) < 1.0) jump -= alpha * atom.z;
                           value += atom.mass * jump;
                       }
                   },
                   [](const auto&) {
                       throw Error(ErrorCode::UnsupportedRepresentation,
                                   "Levy-Khintchine sum requires a finite atomic Levy measure");
                   },
               },
               triplet.levy_measure);
    return value;
}

ShefferValues sheffer_polynomials(const NoiseModel& model, double xi, double t)
{
    if (!(t >= 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "time must be nonnegative");
    }
    const auto [d1, d2] = exponent_derivatives(model, 0.0);
    const double d3 = exponent_third_derivative(model, 0.0);
    const double c = xi - d1 * t;
    return ShefferValues{
        c,
        0.5 * (c * c - d2 * t),
        (c * c * c - 3.0 * d2 * t * c - d3 * t) / 6.0,
    };
}

}  // namespace levy

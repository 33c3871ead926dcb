#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace levy {

using Complex = std::complex<double>;

enum class Family {
    Brownian,
    Poisson,
    Gamma,
    VarianceGamma,
    NegativeBinomial,
    InverseGaussian,
    NormalInverseGaussian,
};

inline constexpr Family kAllFamilies[] = {
    Family::Brownian,         Family::Poisson,         Family::Gamma,
    Family::VarianceGamma,    Family::NegativeBinomial, Family::InverseGaussian,
    Family::NormalInverseGaussian,
};

std::string_view to_string(Family family) noexcept;

/// Accepts the canonical names ("brownian", "variance-gamma", ...) and the
/// short forms "vg", "nb", "ig", "nig". Case-insensitive.
std::optional<Family> parse_family(std::string_view name);

/// Real interval with independently open/closed ends; infinite ends are open.
struct Interval {
    double lo;
    double hi;
    bool lo_open;
    bool hi_open;

    bool contains(double x) const noexcept;
    bool contains_interior(double x) const noexcept { return x > lo && x < hi; }
    bool bounded() const noexcept;
};

namespace params {

/// Brownian motion with unit volatility. Drift is zero for the fiducial
/// process; nonzero drift appears after an Esscher transform.
struct Brownian {
    double drift = 0.0;
    bool operator==(const Brownian&) const = default;
};

struct Poisson {
    double rate;
    bool operator==(const Poisson&) const = default;
};

/// Exponent -m ln(1 - kappa alpha).
struct Gamma {
    double rate;
    double scale;
    bool operator==(const Gamma&) const = default;
};

/// Exponent -m ln(1 - mu alpha / m - sigma^2 alpha^2 / (2m)); standard form has
/// mu = 0 and sigma = 1.
struct VarianceGamma {
    double rate;
    double drift = 0.0;
    double volatility = 1.0;
    bool operator==(const VarianceGamma&) const = default;
    bool standard() const noexcept { return drift == 0.0 && volatility == 1.0; }
};

/// Exponent m ln((1 - q) / (1 - q e^alpha)).
struct NegativeBinomial {
    double rate;
    double prob;
    bool operator==(const NegativeBinomial&) const = default;
};

/// Exponent a (b - sqrt(b^2 - 2 alpha)).
struct InverseGaussian {
    double a;
    double b;
    bool operator==(const InverseGaussian&) const = default;
};

/// Exponent m (sqrt(a^2 - b^2) - sqrt(a^2 - (b + alpha)^2)).
struct NormalInverseGaussian {
    double a;
    double b;
    double rate;
    bool operator==(const NormalInverseGaussian&) const = default;
};

}  // namespace params

/// A fiducial noise family together with validated parameters.
class NoiseModel {
  public:
    using Params = std::variant<params::Brownian, params::Poisson, params::Gamma,
                                params::VarianceGamma, params::NegativeBinomial,
                                params::InverseGaussian, params::NormalInverseGaussian>;

    /// Throws Error(InvalidParameter) if any parameter constraint fails.
    explicit NoiseModel(Params p);

    Family family() const noexcept { return static_cast<Family>(params_.index()); }
    const Params& params() const noexcept { return params_; }

    template <class P>
    const P& get() const
    {
        return std::get<P>(params_);
    }

    /// Flat parameter list in the same order accepted by make_noise_model.
    std::vector<double> parameter_list() const;

    bool operator==(const NoiseModel&) const = default;

  private:
    Params params_;
};

std::string describe(const NoiseModel& model);

/// Parameter layouts:
///   Brownian: [] or [drift]
///   Poisson: [m]            Gamma: [m, kappa]
///   VarianceGamma: [m] or [m, mu, sigma]
///   NegativeBinomial: [m, q]   InverseGaussian: [a, b]
///   NormalInverseGaussian: [a, b, m]
NoiseModel make_noise_model(Family family, std::span<const double> params);

Interval admissible_set(const NoiseModel& model);

/// Range of psi' over the admissible set; open where the bound is not attained.
Interval marginal_range(const NoiseModel& model);

/// psi(alpha); requires Re(alpha) in the admissible set.
Complex fiducial_exponent(const NoiseModel& model, Complex alpha);
double fiducial_exponent(const NoiseModel& model, double alpha);

struct ExponentDerivatives {
    double first;
    double second;
};

ExponentDerivatives exponent_derivatives(const NoiseModel& model, double alpha);
double exponent_third_derivative(const NoiseModel& model, double alpha);

/// Inverse of psi'. Closed form for Brownian, Poisson and Gamma; safeguarded
/// Newton iteration otherwise. Throws OutOfRange if y is not attained.
double inverse_marginal(const NoiseModel& model, double y);

/// psi(alpha + x) - psi(x).
Complex conditional_exponent(const NoiseModel& model, double x, Complex alpha);

/// The model whose exponent is psi(alpha + lambda) - psi(lambda).
NoiseModel esscher_transform(const NoiseModel& model, double lambda);

// ---------------------------------------------------------------------------
// Levy-Khintchine data
// ---------------------------------------------------------------------------

namespace measure {

struct None {};

struct JumpAtom {
    double z;
    double mass;
};

/// Finitely many atoms; for negative binomial the logarithmic tail is truncated
/// once what remains is below 1e-17 of total_mass.
struct Atomic {
    std::vector<JumpAtom> atoms;
    double total_mass;
};

/// m z^-1 exp(-z / kappa) on z > 0.
struct Gamma {
    double rate;
    double scale;
};

/// m |z|^-1 exp(-z / k_up) on z > 0 and m |z|^-1 exp(-|z| / k_down) on z < 0.
struct TwoSidedGamma {
    double rate;
    double scale_up;
    double scale_down;
};

/// a (2 pi)^-1/2 z^-3/2 exp(-b^2 z / 2) on z > 0.
struct InverseGaussian {
    double a;
    double b;
};

/// (m a / pi) exp(b z) K_1(a |z|) / |z|.
struct NormalInverseGaussian {
    double a;
    double b;
    double rate;
};

}  // namespace measure

using LevyMeasure = std::variant<measure::None, measure::Atomic, measure::Gamma,
                                 measure::TwoSidedGamma, measure::InverseGaussian,
                                 measure::NormalInverseGaussian>;

/// Levy density at z != 0 for the absolutely continuous measures; zero for
/// None. Throws InvalidParameter for atomic measures.
double levy_density(const LevyMeasure& nu, double z);

/// (p, q, nu) with truncation function 1{|z| < 1}.
struct CharacteristicTriplet {
    double drift;
    double gaussian;
    LevyMeasure levy_measure;
};

CharacteristicTriplet characteristics(const NoiseModel& model);

/// Triplet of the conditional law given X = x: the Levy measure is tilted by
/// e^{xz} and the drift shifted accordingly.
CharacteristicTriplet tilted_characteristics(const NoiseModel& model, double x);

/// Exponent rebuilt from a triplet whose Levy measure is None or Atomic.
Complex levy_khintchine_exponent(const CharacteristicTriplet& triplet, Complex alpha);

struct ShefferValues {
    double q1;
    double q2;
    double q3;
};

/// First three Levy-Sheffer polynomials evaluated at (xi, t).
ShefferValues sheffer_polynomials(const NoiseModel& model, double xi, double t);

}  // namespace levy

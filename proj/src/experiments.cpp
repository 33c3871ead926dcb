#include "levy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy/error.hpp"
#include "levy/filter.hpp"
#include "levy/format.hpp"
#include "levy/innovations.hpp"
#include "levy/random.hpp"
#include "levy/simulate.hpp"
#include "levy/statistics.hpp"

namespace levy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_paths(const StudyOptions& opts, std::size_t minimum)
{
    if (opts.paths < minimum) {
        throw Error(ErrorCode::TooFewSamples,
                    "study needs at least " + std::to_string(minimum) + " paths");
    }
}

StudyRow compare(std::string quantity, double estimate, double reference, double se)
{
    return StudyRow{std::move(quantity), estimate, reference, se,
                    z_score(estimate - reference, se), true};
}

// Two independent estimates of the same quantity.
StudyRow compare_pair(std::string quantity, const MeanEstimate& a, const MeanEstimate& b)
{
    const double se = std::hypot(a.std_error, b.std_error);
    return compare(std::move(quantity), a.mean, b.mean, se);
}

std::vector<double> sorted_positive(std::span<const double> times)
{
    std::vector<double> out(times.begin(), times.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() || !(out.front() > 0.0)) {
        throw Error(ErrorCode::InvalidGrid, "study times must be positive");
    }
    return out;
}

TimeGrid grid_through(const std::vector<double>& times)
{
    std::vector<double> pts{0.0};
    pts.insert(pts.end(), times.begin(), times.end());
    return TimeGrid(std::move(pts));
}

std::string label(std::string_view head, double value)
{
    return std::string(head) + format_number(value);
}

struct Draw {
    double x;
    std::vector<double> xi;
};

}  // namespace

bool StudyReport::passed() const
{
    return std::all_of(rows.begin(), rows.end(), [&](const StudyRow& r) {
        return !r.checked || std::abs(r.z) <= threshold;
    });
}

double StudyReport::max_abs_z() const
{
    double worst = 0.0;
    for (const auto& r : rows) {
        if (r.checked) worst = std::max(worst, std::isnan(r.z) ? std::numeric_limits<double>::infinity()
                                                               : std::abs(r.z));
    }
    return worst;
}

StudyReport convergence_study(const NoiseModel& model, const Prior& prior,
                              std::span<const double> times, double epsilon,
                              const StudyOptions& opts)
{
    require_paths(opts, 1000);
    check_compatibility(prior, model);
    const auto ts = sorted_positive(times);
    const TimeGrid grid = grid_through(ts);

    const auto draws = parallel_map<Draw>(opts.paths, [&](std::size_t p) {
        const auto path = simulate_information_path(model, prior, grid, RandomStream(opts.seed, p));
        return Draw{path.message, path.values};
    });

    const double mean_curvature = prior_expectation(
        prior, [&](double x) { return exponent_derivatives(model, x).second; });

    StudyReport report{"convergence", {}, opts.threshold};
    const double n = static_cast<double>(opts.paths);
    std::vector<double> sq(opts.paths);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double t = ts[j];
        std::size_t exceed = 0;
        for (std::size_t p = 0; p < opts.paths; ++p) {
            const double xi = draws[p].xi[j + 1];
            const double x = draws[p].x;
            const double err = xi / t - exponent_derivatives(model, x).first;
            sq[p] = err * err;
            const double i0 = clamped_inverse_marginal(model, xi / t).first;
            if (!(std::abs(i0 - x) < epsilon)) ++exceed;
        }
        const auto mse = mean_estimate(sq);
        report.rows.push_back(compare(label("mse@t=", t), mse.mean, mean_curvature / t, mse.std_error));
        const double prob = static_cast<double>(exceed) / n;
        report.rows.push_back(StudyRow{label("exceedance@t=", t) + ";eps=" + format_number(epsilon),
                                       prob, kNaN, std::sqrt(prob * (1.0 - prob) / n), kNaN,
                                       false});
    }
    return report;
}

StudyReport factorization_study(const NoiseModel& model, const Prior& prior,
                                std::span<const double> alpha_im, std::span<const double> beta_im,
                                double t, const StudyOptions& opts)
{
    require_paths(opts, 100);
    check_compatibility(prior, model);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParameter, "factorization time must be positive");
    const TimeGrid grid({0.0, t});

    const auto draws = parallel_map<Draw>(opts.paths, [&](std::size_t p) {
        const auto path = simulate_information_path(model, prior, grid, RandomStream(opts.seed, p));
        return Draw{path.message, path.values};
    });
    std::vector<double> weight(opts.paths);
    for (std::size_t p = 0; p < opts.paths; ++p) {
        const double x = draws[p].x;
        weight[p] = std::exp(-x * draws[p].xi[1] + fiducial_exponent(model, x) * t);
    }

    StudyReport report{"factorization", {}, opts.threshold};
    std::vector<double> re(opts.paths), im(opts.paths);
    for (double a : alpha_im) {
        const Complex noise_cf = std::exp(fiducial_exponent(model, Complex(0.0, a)) * t);
        for (double b : beta_im) {
            Complex message_cf{};
            for (const auto& atom : prior.atoms()) {
                message_cf += atom.w * std::exp(Complex(0.0, b * atom.x));
            }
            const Complex reference = noise_cf * message_cf;
            for (std::size_t p = 0; p < opts.paths; ++p) {
                const double phase = a * draws[p].xi[1] + b * draws[p].x;
                re[p] = weight[p] * std::cos(phase);
                im[p] = weight[p] * std::sin(phase);
            }
            const std::string tag = "@a=" + format_number(a) + "i;b=" + format_number(b) + "i";
            const auto er = mean_estimate(re);
            const auto ei = mean_estimate(im);
            report.rows.push_back(compare("re" + tag, er.mean, reference.real(), er.std_error));
            report.rows.push_back(compare("im" + tag, ei.mean, reference.imag(), ei.std_error));
        }
    }
    return report;
}

StudyReport esscher_consistency_study(const NoiseModel& model, double lambda, double t,
                                      const StudyOptions& opts)
{
    require_paths(opts, 100);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParameter, "esscher study time must be positive");
    if (lambda != 0.0 && !admissible_set(model).contains_interior(lambda)) {
        throw Error(ErrorCode::OutOfDomain, "esscher parameter must be interior to the admissible set");
    }
    const NoiseModel tilted = esscher_transform(model, lambda);
    const double log_norm = fiducial_exponent(model, lambda) * t;
    // Second moments are centered at the exact tilted mean so both estimators
    // of the variance are unbiased.
    const double center = exponent_derivatives(model, lambda).first * t;

    struct Pair {
        double direct;
        double fiducial;
    };
    // Independent draws for the two estimators, except that a zero tilt leaves
    // nothing to compare and both sides read the same sample.
    const auto draws = parallel_map<Pair>(opts.paths, [&](std::size_t p) {
        RandomStream fiducial(opts.seed, p, 2);
        const double xf = sample_increment(model, t, fiducial);
        if (lambda == 0.0) return Pair{xf, xf};
        RandomStream direct(opts.seed, p, 1);
        return Pair{sample_increment(tilted, t, direct), xf};
    });

    std::vector<double> d1(opts.paths), d2(opts.paths), w1(opts.paths), w2(opts.paths);
    for (std::size_t p = 0; p < opts.paths; ++p) {
        const double xd = draws[p].direct;
        const double xf = draws[p].fiducial;
        const double w = std::exp(lambda * xf - log_norm);
        d1[p] = xd;
        d2[p] = (xd - center) * (xd - center);
        w1[p] = w * xf;
        w2[p] = w * (xf - center) * (xf - center);
    }
    StudyReport report{"esscher", {}, opts.threshold};
    report.rows.push_back(compare_pair(label("mean@lambda=", lambda), mean_estimate(w1), mean_estimate(d1)));
    report.rows.push_back(
        compare_pair(label("variance@lambda=", lambda), mean_estimate(w2), mean_estimate(d2)));
    return report;
}

StudyReport representation_equivalence_study(const NoiseModel& model, double x, double t,
                                             const StudyOptions& opts)
{
    require_paths(opts, 100);
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidParameter, "representation study time must be positive");
    std::vector<Representation> reps;
    if (model.family() == Family::VarianceGamma) {
        reps.assign(std::begin(kVGRepresentations), std::end(kVGRepresentations));
    } else if (model.family() == Family::NegativeBinomial) {
        reps.assign(std::begin(kNBRepresentations), std::end(kNBRepresentations));
    } else {
        throw Error(ErrorCode::UnsupportedRepresentation,
                    "representation study applies to variance gamma and negative binomial only");
    }
    const TimeGrid grid({0.0, t});
    const auto d = exponent_derivatives(model, x);
    const double exact[3] = {d.first * t, d.second * t, exponent_third_derivative(model, x) * t};

    std::vector<Cumulants> stats;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const auto samples = parallel_map<double>(opts.paths, [&](std::size_t p) {
            const auto path = simulate_alternative_representation(model, reps[r], x, grid,
                                                                  RandomStream(opts.seed, p, r + 1));
            return path.values[1];
        });
        stats.push_back(k_statistics(samples));
    }

    StudyReport report{"representation", {}, opts.threshold};
    const std::string at = "@x=" + format_number(x);
    for (std::size_t r = 0; r < reps.size(); ++r) {
        for (int k = 0; k < 3; ++k) {
            report.rows.push_back(compare("k" + std::to_string(k + 1) + "[" +
                                              std::string(to_string(reps[r])) + "]" + at,
                                          stats[r].k[k], exact[k], stats[r].std_error[k]));
        }
    }
    for (std::size_t a = 0; a < reps.size(); ++a) {
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            for (int k = 0; k < 3; ++k) {
                report.rows.push_back(compare(
                    "k" + std::to_string(k + 1) + "[" + std::string(to_string(reps[a])) + "~" +
                        std::string(to_string(reps[b])) + "]" + at,
                    stats[a].k[k], stats[b].k[k],
                    std::hypot(stats[a].std_error[k], stats[b].std_error[k])));
            }
        }
    }
    return report;
}

StudyReport bridge_study(const NoiseModel& model, double x, double horizon,
                         std::span<const double> times, const StudyOptions& opts)
{
    require_paths(opts, 100);
    const auto ts = sorted_positive(times);
    const TimeGrid grid = grid_through(ts);
    const Atom point{x, 1.0};
    const Prior prior = prior_from_atoms(std::span(&point, 1));
    check_compatibility(prior, model);

    const auto draws = parallel_map<std::vector<double>>(opts.paths, [&](std::size_t p) {
        return simulate_bridge_path(model, prior, horizon, grid, RandomStream(opts.seed, p)).values;
    });
    const auto d = exponent_derivatives(model, x);

    StudyReport report{"bridge", {}, opts.threshold};
    const std::size_t k = ts.size();
    std::vector<MeanEstimate> means(k);
    std::vector<double> col(opts.paths);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t p = 0; p < opts.paths; ++p) col[p] = draws[p][j + 1];
        means[j] = mean_estimate(col);
        report.rows.push_back(
            compare(label("mean@t=", ts[j]), means[j].mean, d.first * ts[j], means[j].std_error));
    }
    const double n = static_cast<double>(opts.paths);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            for (std::size_t p = 0; p < opts.paths; ++p) {
                col[p] = (draws[p][i + 1] - means[i].mean) * (draws[p][j + 1] - means[j].mean);
            }
            const auto c = mean_estimate(col);
            const double s = ts[i];
            const double reference = s * (horizon - ts[j]) / horizon * d.second;
            report.rows.push_back(compare("cov@s=" + format_number(s) + ";t=" + format_number(ts[j]),
                                          c.mean * n / (n - 1.0), reference, c.std_error));
        }
    }
    return report;
}

StudyReport innovations_study(const NoiseModel& model, const Prior& prior, double t_max,
                              std::size_t steps, std::size_t intervals, const StudyOptions& opts)
{
    require_paths(opts, 100);
    check_compatibility(prior, model);
    if (intervals == 0 || steps % intervals != 0) {
        throw Error(ErrorCode::InvalidGrid, "steps must be a positive multiple of intervals");
    }
    const TimeGrid grid = TimeGrid::uniform(t_max, steps);
    const std::size_t stride = steps / intervals;

    const auto increments = parallel_map<std::vector<double>>(opts.paths, [&](std::size_t p) {
        const auto path = simulate_information_path(model, prior, grid, RandomStream(opts.seed, p));
        const auto inn = innovations_path(path, prior);
        std::vector<double> out(intervals);
        for (std::size_t k = 0; k < intervals; ++k) {
            out[k] = inn.M[(k + 1) * stride] - inn.M[k * stride];
        }
        return out;
    });
    std::vector<std::vector<double>> by_interval(intervals, std::vector<double>(opts.paths));
    for (std::size_t p = 0; p < opts.paths; ++p) {
        for (std::size_t k = 0; k < intervals; ++k) by_interval[k][p] = increments[p][k];
    }
    const auto test = martingale_test(by_interval, opts.threshold);

    StudyReport report{"innovations", {}, opts.threshold};
    for (std::size_t k = 0; k < intervals; ++k) {
        const auto& row = test.rows[k];
        report.rows.push_back(StudyRow{"dM@[" + format_number(grid[k * stride]) + ";" +
                                           format_number(grid[(k + 1) * stride]) + "]",
                                       row.mean, 0.0, row.std_error, row.z, true});
    }
    return report;
}

}  // namespace levy

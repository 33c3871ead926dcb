#include "levy/innovations.hpp"

#include <cmath>
#include <limits>

#include "levy/error.hpp"
#include "levy/filter.hpp"

namespace levy {

InnovationsPath innovations_path(const InformationPath& path, const Prior& prior)
{
    const TimeGrid& grid = path.grid;
    if (grid.size() < 2) throw Error(ErrorCode::InvalidGrid, "innovations need at least two grid points");
    if (path.values.size() != grid.size()) {
        throw Error(ErrorCode::InvalidParameter, "path values and grid differ in length");
    }
    const NoiseModel& model = path.model;
    const std::size_t n = grid.size();
    InnovationsPath out{grid, path.values, std::vector<double>(n), std::vector<double>(n),
                        std::vector<double>(n)};

    Posterior post = posterior_update(prior, model, path.values[0], grid[0]);
    out.yhat[0] = filtered_drift(post, model);
    for (std::size_t i = 1; i < n; ++i) {
        out.integral[i] = out.integral[i - 1] + out.yhat[i - 1] * (grid[i] - grid[i - 1]);
        post = sequential_update(post, model, path.values[i] - path.values[i - 1],
                                 grid[i] - grid[i - 1]);
        out.yhat[i] = filtered_drift(post, model);
    }
    for (std::size_t i = 0; i < n; ++i) out.M[i] = out.xi[i] - out.integral[i];
    return out;
}

std::vector<double> compensated_path(const InformationPath& path, const NoiseModel& model)
{
    const double drift = exponent_derivatives(model, path.message).first;
    std::vector<double> m(path.values.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = path.values[i] - drift * path.grid[i];
    return m;
}

MartingaleReport martingale_test(std::span<const std::vector<double>> increments, double threshold)
{
    MartingaleReport report{{}, true};
    for (const auto& sample : increments) {
        if (sample.size() < 100) {
            throw Error(ErrorCode::TooFewSamples, "martingale test needs at least 100 samples per interval");
        }
        const double n = static_cast<double>(sample.size());
        double mean = 0.0;
        for (double v : sample) mean += v;
        mean /= n;
        double ss = 0.0;
        for (double v : sample) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / (n - 1.0) / n);
        double z = 0.0;
        if (se > 0.0) {
            z = mean / se;
        } else if (mean != 0.0) {
            z = std::copysign(std::numeric_limits<double>::infinity(), mean);
        }
        const bool flagged = !(std::abs(z) <= threshold);
        report.rows.push_back({mean, se, z, flagged});
        if (flagged) report.passed = false;
    }
    return report;
}

}  // namespace levy

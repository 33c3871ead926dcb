#pragma once

#include <span>
#include <vector>

#include "levy/noise_model.hpp"
#include "levy/prior.hpp"
#include "levy/simulate.hpp"

namespace levy {

/// xi = integral + M on a grid, with integral the left-endpoint Riemann sum of
/// the filtered drift yhat. The drift over [t_{i-1}, t_i] uses the posterior
/// at t_{i-1}, before the observation at t_i enters.
struct InnovationsPath {
    TimeGrid grid;
    std::vector<double> xi;
    std::vector<double> yhat;
    std::vector<double> integral;
    std::vector<double> M;
};

/// Requires at least two grid points. Reads only the observed values.
InnovationsPath innovations_path(const InformationPath& path, const Prior& prior);

/// xi_t - psi'(x) t using the hidden message (for verification only).
std::vector<double> compensated_path(const InformationPath& path, const NoiseModel& model);

struct MartingaleRow {
    double mean;
    double std_error;
    double z;
    bool flagged;
};

struct MartingaleReport {
    std::vector<MartingaleRow> rows;
    bool passed;
};

/// One row per interval: sample mean of the increments, its standard error and
/// z = mean / stderr. Throws TooFewSamples below 100 samples in any interval.
MartingaleReport martingale_test(std::span<const std::vector<double>> increments,
                                 double threshold = 3.5);

}  // namespace levy

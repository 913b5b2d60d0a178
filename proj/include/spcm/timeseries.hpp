#pragma once

#include <Eigen/Core>
#include <vector>

#include "spcm/errors.hpp"

namespace spcm {

/// M sequences of N-dimensional observations, rows = time steps.
struct TimeSeriesSet {
    int dim = 0;
    std::vector<Eigen::MatrixXd> series;

    int count() const { return static_cast<int>(series.size()); }
};

void check_timeseries(const TimeSeriesSet& x);

/// Per-dimension z-scoring across all series (pooled mean and deviation).
/// Constant dimensions are left unscaled.
TimeSeriesSet standardize(const TimeSeriesSet& x);

}  // namespace spcm

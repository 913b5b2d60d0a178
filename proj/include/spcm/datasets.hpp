#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spcm/spd.hpp"
#include "spcm/timeseries.hpp"

namespace spcm {

struct CovarianceDataset {
    int dim = 0;
    std::vector<SpdMatrix> matrices;
    std::vector<int> labels;                     // empty = absent
    std::vector<std::pair<int, int>> coords;     // empty = absent (lattice row, col)
};

struct LabeledTimeSeriesSet {
    TimeSeriesSet data;
    std::vector<std::vector<int>> labels_dependent;
    std::vector<std::vector<int>> labels_invariant;
};

/// Five 3-D matrices in two spectral classes: a base matrix, a scaled noisy
/// copy, a rotated copy, a second fixed matrix and its rotated scaled copy.
/// Labels {1,1,1,2,2}.
CovarianceDataset gen_toy3d(std::uint64_t seed);

/// Sixty 6-D matrices: three eigenvalue templates, twenty random rotations
/// each. Within a class all spectra are identical; the template draw is
/// retried until every cross-class dissimilarity clears 0.12.
CovarianceDataset gen_toy6d(std::uint64_t seed);

struct Toy2dParams {
    double translation_x = 3.0;
    double translation_y = 3.0;
    double eigen_scale = 3.0;
    double rotation_deg = 60.0;
    double self_transition = 0.99;
    int t_min = 300;
    int t_max = 500;
};

/// The four generating Gaussians: theta_1 and theta_2 are the base models,
/// theta_3 = f1(theta_2) translates and scales eigenvalues, theta_4 =
/// f2(theta_3) translates and rotates. Deterministic in the parameters.
std::vector<GaussianParams> toy2d_emissions(const Toy2dParams& params = {});

/// Four sticky-switching 2-D series over the toy2d_emissions models with
/// ground truth at both levels: transform-dependent states 1..4 and
/// transform-invariant clusters 1..2 ({theta_1} vs {theta_2..4}).
LabeledTimeSeriesSet gen_toy2d_timeseries(std::uint64_t seed, const Toy2dParams& params = {});

/// rows x cols grid of 3x3 SPD matrices split into `regions` contiguous
/// row-major bands; one spectral template per region, per-cell copies under
/// small random rotations. Labels and (row, col) coords returned.
CovarianceDataset gen_spd_lattice(int rows, int cols, int regions, std::uint64_t seed);

std::string covariance_dataset_to_json(const CovarianceDataset& d);
CovarianceDataset covariance_dataset_from_json(const std::string& text);
void save_covariance_dataset(const CovarianceDataset& d, const std::string& path);
CovarianceDataset load_covariance_dataset(const std::string& path);

std::string timeseries_set_to_json(const LabeledTimeSeriesSet& d);
LabeledTimeSeriesSet timeseries_set_from_json(const std::string& text);
void save_timeseries_set(const LabeledTimeSeriesSet& d, const std::string& path);
LabeledTimeSeriesSet load_timeseries_set(const std::string& path);

}  // namespace spcm

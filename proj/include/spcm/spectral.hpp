#pragma once

#include <Eigen/Core>
#include <vector>

#include "spcm/similarity.hpp"

namespace spcm {

/// Softmax over eigenvalues plus a min-max rescale onto [-1, 1].
/// An all-equal spectrum (spread below 1e-12) raises DegenerateSpectrumError.
struct EigenvalueWeights {
    Eigen::VectorXd raw;         // softmax, sums to 1
    Eigen::VectorXd normalized;  // rescaled, min -1 and max +1
};

EigenvalueWeights softmax_weights(const Eigen::VectorXd& eigenvalues);

/**
 * @brief Spectral embedding with unsupervised dimensionality choice.
 *
 * coords is M x dimension; row i is point i, re-normalized to unit length.
 * Rows whose pre-normalization norm fell below 1e-12 are left at zero and
 * listed in zero_rows.
 */
struct Embedding {
    int dimension = 0;
    Eigen::MatrixXd coords;
    std::vector<int> zero_rows;

    int size() const { return static_cast<int>(coords.rows()); }
};

/**
 * Normalized-Laplacian embedding: L_sym = I - D^(-1/2) S D^(-1/2), ascending
 * eigenvalues, softmax weights rescaled to [-1, 1]; the embedding keeps one
 * eigenvector column per negative normalized weight. Degenerate spectra and
 * the no-negative-weight case fall back to a single dimension.
 *
 * The similarity must be symmetric with non-negative entries and strictly
 * positive row sums (InvalidSimilarityError otherwise).
 */
Embedding embed(const SimilarityMatrix& s);

}  // namespace spcm

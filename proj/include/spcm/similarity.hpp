#pragma once

#include <Eigen/Core>
#include <vector>

#include "spcm/spd.hpp"

namespace spcm {

enum class SimilarityKind { Airm, Lerm, Kldm, Jbld, SpcmDelta, Bspcm };

enum class Execution { Serial, Parallel };

const char* similarity_kind_name(SimilarityKind kind);
SimilarityKind similarity_kind_from_name(const std::string& name);

/// Spectral polytope axis lengths: sqrt of eigenvalues, descending.
Eigen::VectorXd spectral_axis_norms(const SpdMatrix& m);

/**
 * @brief Element-wise axis-length ratios of one spectrum against another.
 *
 * ratios[k] = norms_a[k] / norms_b[k]; mean and variance are the population
 * statistics (1/N) over the ratio vector. A pure homothety gives a constant
 * ratio vector, hence zero variance.
 */
struct HomothetyStats {
    Eigen::VectorXd ratios;
    double mean = 0.0;
    double variance = 0.0;
};

HomothetyStats homothety_stats(const Eigen::VectorXd& norms_a, const Eigen::VectorXd& norms_b);

/// Directional-variance dissimilarity of the spectral polytopes. Zero exactly
/// on rotation + uniform-scaling equivalence, symmetric, non-negative.
double spcm_delta(const SpdMatrix& a, const SpdMatrix& b);

/// Bounded similarity 1 / (1 + upsilon(tau) * delta) with
/// upsilon(tau) = 10^(tau * exp(-N)). Equals 1 iff delta = 0.
double bspcm(const SpdMatrix& a, const SpdMatrix& b, double tau);

/// Affine-invariant, log-Euclidean, symmetric KL, and Jensen-Bregman
/// log-det distances. AIRM and KLDM reject inputs with condition
/// number above 1e12 (NumericalError).
double standard_similarity(SimilarityKind kind, const SpdMatrix& a, const SpdMatrix& b);

struct SimilarityMatrix {
    Eigen::MatrixXd values;
    SimilarityKind kind = SimilarityKind::Bspcm;
    double tau = 1.0;

    int size() const { return static_cast<int>(values.rows()); }
};

/**
 * @brief Full pairwise matrix over a set of SPD matrices.
 *
 * Upper-triangle cells are independent work items; the parallel path and the
 * serial reference produce bit-identical matrices. Diagonal entries are exact:
 * 1 for bspcm, 0 for every distance kind.
 */
SimilarityMatrix pairwise_matrix(const std::vector<SpdMatrix>& data, SimilarityKind kind,
                                 double tau = 1.0, Execution exec = Execution::Parallel);

/// Serial reference kernel, kept for equality testing and benchmarking.
SimilarityMatrix pairwise_matrix_serial(const std::vector<SpdMatrix>& data, SimilarityKind kind,
                                        double tau = 1.0);

}  // namespace spcm

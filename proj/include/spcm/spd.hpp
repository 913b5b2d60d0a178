#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "spcm/errors.hpp"
#include "spcm/rng.hpp"

namespace spcm {

/**
 * @brief Symmetric positive definite matrix, validated on construction.
 *
 * Construction goes through validate(): asymmetry beyond 1e-9 raises
 * NotSymmetricError, a non-positive spectrum raises NotPositiveDefiniteError.
 * The stored matrix is the symmetrized (A + A^T)/2 form.
 */
class SpdMatrix {
public:
    static SpdMatrix validate(const Eigen::MatrixXd& m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    static constexpr double symmetry_tol = 1e-9;
    static constexpr double positivity_tol = 1e-12;

private:
    explicit SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

/// Eigenvalues in descending order with matching eigenvector columns.
/// Each eigenvector's largest-magnitude entry is positive (first index on ties),
/// so decompositions are deterministic.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

EigenDecomposition eigendecompose(const SpdMatrix& m);

struct GaussianParams {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

/// Rotation (orthogonal, det ±1) plus uniform scale gamma > 0.
struct RigidTransform {
    Eigen::MatrixXd rotation;
    double scale = 1.0;
};

/// Population covariance (1/M normalization) of row-wise points.
/// Rank-deficient results raise DegenerateDataError.
SpdMatrix sample_covariance(const Eigen::MatrixXd& points);

/// Random orthogonal matrix (QR of a standard normal draw) and a scale
/// uniform on [scale_lo, scale_hi].
RigidTransform random_transform(int dim, double scale_lo, double scale_hi, Rng& rng);

/// gamma * R * Sigma * R^T, revalidated.
SpdMatrix apply_transform(const SpdMatrix& sigma, const RigidTransform& t);

double gaussian_logpdf(const Eigen::VectorXd& x, const GaussianParams& p);

/// Gaussian density evaluator with a cached Cholesky factor for hot loops.
class Gaussian {
public:
    Gaussian(Eigen::VectorXd mean, const SpdMatrix& covariance);

    double logpdf(const Eigen::VectorXd& x) const;
    const Eigen::VectorXd& mean() const { return mean_; }
    const Eigen::MatrixXd& covariance() const { return cov_; }

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double log_norm_;
};

}  // namespace spcm

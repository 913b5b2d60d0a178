#include "spcm/spd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

namespace spcm {

namespace {

// Flips eigenvector columns so the entry of largest magnitude is positive.
// Ties resolve to the first occurrence, which keeps results deterministic.
void fix_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index best = 0;
        double best_abs = std::abs(vectors(0, c));
        for (Eigen::Index r = 1; r < vectors.rows(); ++r) {
            double a = std::abs(vectors(r, c));
            if (a > best_abs) {
                best_abs = a;
                best = r;
            }
        }
        if (vectors(best, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

}  // namespace

SpdMatrix SpdMatrix::validate(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionMismatchError("matrix must be square and non-empty");
    }
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol) {
        throw NotSymmetricError("asymmetry " + std::to_string(asym) + " exceeds tolerance");
    }
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition failed during validation");
    }
    if (es.eigenvalues().minCoeff() <= positivity_tol) {
        throw NotPositiveDefiniteError(
            "smallest eigenvalue " + std::to_string(es.eigenvalues().minCoeff()) +
            " is not strictly positive");
    }
    return SpdMatrix(std::move(sym));
}

EigenDecomposition eigendecompose(const SpdMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix());
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition failed");
    }
    // Eigen returns ascending order; the spectral-axis convention is descending.
    const Eigen::Index n = m.dim();
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = es.eigenvalues()(n - 1 - k);
        out.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    fix_signs(out.eigenvectors);
    return out;
}

SpdMatrix sample_covariance(const Eigen::MatrixXd& points) {
    const Eigen::Index m = points.rows();
    if (m == 0) throw DegenerateDataError("no points");
    Eigen::RowVectorXd mean = points.colwise().mean();
    Eigen::MatrixXd centered = points.rowwise() - mean;
    Eigen::MatrixXd c = (centered.transpose() * centered) / static_cast<double>(m);
    c = 0.5 * (c + c.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= SpdMatrix::positivity_tol) {
        throw DegenerateDataError("sample covariance is rank deficient");
    }
    return SpdMatrix::validate(c);
}

RigidTransform random_transform(int dim, double scale_lo, double scale_hi, Rng& rng) {
    if (dim < 1) throw DimensionMismatchError("dimension must be positive");
    if (!(scale_lo > 0.0) || scale_hi < scale_lo) {
        throw DegenerateDataError("scale range must satisfy 0 < lo <= hi");
    }
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    // Normalize the QR sign ambiguity: make diag(R) positive.
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    RigidTransform t;
    t.rotation = q;
    t.scale = (scale_lo == scale_hi) ? scale_lo : rng.uniform(scale_lo, scale_hi);
    return t;
}

SpdMatrix apply_transform(const SpdMatrix& sigma, const RigidTransform& t) {
    if (t.rotation.rows() != sigma.dim() || t.rotation.cols() != sigma.dim()) {
        throw DimensionMismatchError("rotation and matrix dimensions differ");
    }
    Eigen::MatrixXd out = t.scale * t.rotation * sigma.matrix() * t.rotation.transpose();
    return SpdMatrix::validate(0.5 * (out + out.transpose()));
}

double gaussian_logpdf(const Eigen::VectorXd& x, const GaussianParams& p) {
    Gaussian g(p.mean, SpdMatrix::validate(p.covariance));
    return g.logpdf(x);
}

Gaussian::Gaussian(Eigen::VectorXd mean, const SpdMatrix& covariance)
    : mean_(std::move(mean)), cov_(covariance.matrix()), llt_(cov_) {
    if (mean_.size() != cov_.rows()) {
        throw DimensionMismatchError("mean and covariance dimensions differ");
    }
    if (llt_.info() != Eigen::Success) {
        throw NumericalError("Cholesky factorization failed");
    }
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < cov_.rows(); ++i) {
        logdet += 2.0 * std::log(llt_.matrixL()(i, i));
    }
    log_norm_ = -0.5 * (static_cast<double>(cov_.rows()) * std::log(2.0 * M_PI) + logdet);
}

double Gaussian::logpdf(const Eigen::VectorXd& x) const {
    if (x.size() != mean_.size()) {
        throw DimensionMismatchError("point dimension differs from Gaussian");
    }
    Eigen::VectorXd d = x - mean_;
    double quad = d.dot(llt_.solve(d));
    return log_norm_ - 0.5 * quad;
}

}  // namespace spcm

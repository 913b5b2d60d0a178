#include "spcm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace spcm {

namespace {

constexpr double spectrum_spread_tol = 1e-12;
constexpr double zero_row_tol = 1e-12;

// Same deterministic sign convention as eigendecompose().
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

EigenvalueWeights softmax_weights(const Eigen::VectorXd& eigenvalues) {
    if (eigenvalues.size() == 0) throw DegenerateDataError("empty spectrum");
    double lo = eigenvalues.minCoeff();
    double hi = eigenvalues.maxCoeff();
    if (hi - lo < spectrum_spread_tol) {
        throw DegenerateSpectrumError("eigenvalue spread below tolerance");
    }
    EigenvalueWeights w;
    Eigen::ArrayXd shifted = (eigenvalues.array() - hi).exp();
    w.raw = (shifted / shifted.sum()).matrix();
    double wlo = w.raw.minCoeff();
    double whi = w.raw.maxCoeff();
    w.normalized = (2.0 * (w.raw.array() - wlo) / (whi - wlo) - 1.0).matrix();
    return w;
}

Embedding embed(const SimilarityMatrix& s) {
    const int m = s.size();
    if (m == 0) throw DegenerateDataError("empty similarity matrix");
    const Eigen::MatrixXd& sv = s.values;
    if ((sv - sv.transpose()).cwiseAbs().maxCoeff() > 1e-9 || sv.minCoeff() < 0.0) {
        throw InvalidSimilarityError("similarity must be symmetric with non-negative entries");
    }
    Eigen::VectorXd degree = sv.rowwise().sum();
    if (degree.minCoeff() <= 0.0) {
        throw InvalidSimilarityError("similarity has a zero row sum");
    }

    Eigen::VectorXd dinv_sqrt = degree.array().rsqrt();
    Eigen::MatrixXd lsym = Eigen::MatrixXd::Identity(m, m) -
                           dinv_sqrt.asDiagonal() * sv * dinv_sqrt.asDiagonal();
    lsym = 0.5 * (lsym + lsym.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lsym);
    if (es.info() != Eigen::Success) throw NumericalError("Laplacian eigendecomposition failed");
    Eigen::VectorXd evals = es.eigenvalues();  // ascending
    Eigen::MatrixXd evecs = es.eigenvectors();
    fix_signs(evecs);

    int p = 1;
    try {
        EigenvalueWeights w = softmax_weights(evals);
        int negatives = static_cast<int>((w.normalized.array() < 0.0).count());
        if (negatives > 0) p = negatives;
    } catch (const DegenerateSpectrumError&) {
        // All-equal spectrum carries no dimensionality signal; keep p = 1.
    }

    Embedding out;
    out.dimension = p;
    out.coords = evecs.leftCols(p);
    for (int i = 0; i < m; ++i) {
        double norm = out.coords.row(i).norm();
        if (norm < zero_row_tol) {
            out.coords.row(i).setZero();
            out.zero_rows.push_back(i);
        } else {
            out.coords.row(i) /= norm;
        }
    }
    return out;
}

}  // namespace spcm

#include "spcm/niw.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace spcm {

namespace {

double logdet_chol(const Eigen::MatrixXd& spd) {
    Eigen::LLT<Eigen::MatrixXd> llt(spd);
    if (llt.info() != Eigen::Success) throw NumericalError("Cholesky failed on scale matrix");
    double ld = 0.0;
    for (Eigen::Index i = 0; i < spd.rows(); ++i) ld += 2.0 * std::log(llt.matrixL()(i, i));
    return ld;
}

}  // namespace

void check_niw(const NiwParams& p) {
    const int d = static_cast<int>(p.mean.size());
    if (d == 0) throw DimensionMismatchError("NIW mean is empty");
    if (p.scale.rows() != d || p.scale.cols() != d) {
        throw DimensionMismatchError("NIW scale dimension differs from mean");
    }
    if (!(p.kappa > 0.0)) throw DegenerateDataError("NIW kappa must be positive");
    if (!(p.dof > d - 1)) throw DegenerateDataError("NIW dof must exceed dim - 1");
    SpdMatrix::validate(p.scale);
}

GaussStats GaussStats::zero(int dim) {
    GaussStats s;
    s.n = 0;
    s.sum = Eigen::VectorXd::Zero(dim);
    s.outer = Eigen::MatrixXd::Zero(dim, dim);
    return s;
}

void GaussStats::add(const Eigen::VectorXd& x) {
    if (x.size() != sum.size()) throw DimensionMismatchError("point dimension differs");
    ++n;
    sum += x;
    outer += x * x.transpose();
}

void GaussStats::remove(const Eigen::VectorXd& x) {
    if (n == 0) throw DegenerateDataError("removing from empty statistics");
    --n;
    sum -= x;
    outer -= x * x.transpose();
}

GaussStats GaussStats::merged(const GaussStats& other) const {
    if (sum.size() != other.sum.size()) throw DimensionMismatchError("stat dimensions differ");
    GaussStats s;
    s.n = n + other.n;
    s.sum = sum + other.sum;
    s.outer = outer + other.outer;
    return s;
}

Eigen::VectorXd GaussStats::mean() const {
    if (n == 0) throw DegenerateDataError("mean of empty statistics");
    return sum / static_cast<double>(n);
}

Eigen::MatrixXd GaussStats::scatter() const {
    if (n == 0) return Eigen::MatrixXd::Zero(sum.size(), sum.size());
    Eigen::VectorXd m = mean();
    Eigen::MatrixXd s = outer - static_cast<double>(n) * (m * m.transpose());
    return 0.5 * (s + s.transpose());
}

GaussStats stats_of(const Eigen::MatrixXd& points_rows) {
    GaussStats s = GaussStats::zero(static_cast<int>(points_rows.cols()));
    for (Eigen::Index i = 0; i < points_rows.rows(); ++i) {
        s.add(points_rows.row(i).transpose());
    }
    return s;
}

NiwParams niw_posterior(const NiwParams& prior, const GaussStats& stats) {
    check_niw(prior);
    if (stats.n == 0) return prior;
    if (stats.sum.size() != prior.mean.size()) {
        throw DimensionMismatchError("data dimension differs from prior");
    }
    const double n = static_cast<double>(stats.n);
    NiwParams post;
    post.kappa = prior.kappa + n;
    post.dof = prior.dof + n;
    Eigen::VectorXd ybar = stats.mean();
    post.mean = (prior.kappa * prior.mean + n * ybar) / post.kappa;
    Eigen::VectorXd d = ybar - prior.mean;
    post.scale = prior.scale + stats.scatter() +
                 (prior.kappa * n / post.kappa) * (d * d.transpose());
    post.scale = 0.5 * (post.scale + post.scale.transpose());
    return post;
}

NiwParams niw_posterior(const NiwParams& prior, const Eigen::MatrixXd& points_rows) {
    return niw_posterior(prior, stats_of(points_rows));
}

double log_multigamma(int d, double a) {
    double v = 0.25 * d * (d - 1) * std::log(M_PI);
    for (int j = 1; j <= d; ++j) v += std::lgamma(a + 0.5 * (1 - j));
    return v;
}

double niw_log_marginal(const GaussStats& stats, const NiwParams& prior) {
    check_niw(prior);
    if (stats.n == 0) return 0.0;
    const int d = static_cast<int>(prior.mean.size());
    const double n = static_cast<double>(stats.n);
    NiwParams post = niw_posterior(prior, stats);
    // Ratio of normalization constants Z_n / Z_0 times (2*pi)^(-n*d/2).
    return log_multigamma(d, 0.5 * post.dof) - log_multigamma(d, 0.5 * prior.dof) +
           0.5 * prior.dof * logdet_chol(prior.scale) - 0.5 * post.dof * logdet_chol(post.scale) +
           0.5 * d * std::log(prior.kappa / post.kappa) - 0.5 * n * d * std::log(M_PI);
}

double niw_log_marginal(const Eigen::MatrixXd& points_rows, const NiwParams& prior) {
    return niw_log_marginal(stats_of(points_rows), prior);
}

GaussianParams sample_niw(const NiwParams& p, Rng& rng) {
    check_niw(p);
    const int d = static_cast<int>(p.mean.size());

    // Bartlett: W = (L A)(L A)^T ~ Wishart(dof, scale^(-1)), Sigma = W^(-1).
    Eigen::LLT<Eigen::MatrixXd> llt_scale(p.scale);
    Eigen::MatrixXd scale_inv =
        llt_scale.solve(Eigen::MatrixXd::Identity(d, d));
    scale_inv = 0.5 * (scale_inv + scale_inv.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt_inv(scale_inv);
    if (llt_inv.info() != Eigen::Success) throw NumericalError("scale inverse not SPD");
    Eigen::MatrixXd l = llt_inv.matrixL();

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) a(i, i) = std::sqrt(rng.chi_squared(p.dof - i));
    for (int i = 1; i < d; ++i)
        for (int j = 0; j < i; ++j) a(i, j) = rng.normal();

    Eigen::MatrixXd b = l * a;  // lower triangular, W = b b^T
    Eigen::MatrixXd binv = b.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
    Eigen::MatrixXd sigma = binv.transpose() * binv;
    sigma = 0.5 * (sigma + sigma.transpose());

    GaussianParams g;
    g.covariance = sigma;
    Eigen::LLT<Eigen::MatrixXd> llt_sigma(sigma);
    if (llt_sigma.info() != Eigen::Success) throw NumericalError("drawn covariance not SPD");
    Eigen::VectorXd z(d);
    for (int i = 0; i < d; ++i) z(i) = rng.normal();
    g.mean = p.mean + Eigen::MatrixXd(llt_sigma.matrixL()) * z / std::sqrt(p.kappa);
    return g;
}

double niw_log_pdf(const GaussianParams& g, const NiwParams& prior) {
    check_niw(prior);
    const int d = static_cast<int>(prior.mean.size());
    Eigen::LLT<Eigen::MatrixXd> llt(g.covariance);
    if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("covariance not SPD");
    double logdet_sigma = 0.0;
    for (int i = 0; i < d; ++i) logdet_sigma += 2.0 * std::log(llt.matrixL()(i, i));

    // Inverse-Wishart factor.
    double lp = 0.5 * prior.dof * logdet_chol(prior.scale) -
                0.5 * prior.dof * d * std::log(2.0) - log_multigamma(d, 0.5 * prior.dof) -
                0.5 * (prior.dof + d + 1) * logdet_sigma -
                0.5 * llt.solve(prior.scale).trace();
    // Normal factor for the mean, covariance Sigma/kappa.
    Eigen::VectorXd diff = g.mean - prior.mean;
    double quad = prior.kappa * diff.dot(llt.solve(diff));
    lp += -0.5 * d * std::log(2.0 * M_PI) + 0.5 * d * std::log(prior.kappa) -
          0.5 * logdet_sigma - 0.5 * quad;
    return lp;
}

}  // namespace spcm

#pragma once

#include <Eigen/Core>

#include "spcm/spd.hpp"

namespace spcm {

/// Normal-inverse-Wishart parameters. kappa > 0, dof > dim - 1, scale SPD.
struct NiwParams {
    Eigen::VectorXd mean;
    double kappa = 1.0;
    Eigen::MatrixXd scale;
    double dof = 0.0;
};

void check_niw(const NiwParams& p);

/// Additive sufficient statistics of a point set: count, per-axis sum and
/// the sum of outer products. Merging two sets is field-wise addition.
struct GaussStats {
    long n = 0;
    Eigen::VectorXd sum;
    Eigen::MatrixXd outer;

    static GaussStats zero(int dim);
    void add(const Eigen::VectorXd& x);
    void remove(const Eigen::VectorXd& x);
    GaussStats merged(const GaussStats& other) const;
    Eigen::VectorXd mean() const;
    /// Centered scatter sum (not normalized).
    Eigen::MatrixXd scatter() const;
};

GaussStats stats_of(const Eigen::MatrixXd& points_rows);

NiwParams niw_posterior(const NiwParams& prior, const GaussStats& stats);
NiwParams niw_posterior(const NiwParams& prior, const Eigen::MatrixXd& points_rows);

/// Closed-form log p(points | prior) with (mu, Sigma) integrated out.
/// Empty sets give exactly zero.
double niw_log_marginal(const GaussStats& stats, const NiwParams& prior);
double niw_log_marginal(const Eigen::MatrixXd& points_rows, const NiwParams& prior);

/// Draw (mu, Sigma): Sigma inverse-Wishart via the Bartlett factorization,
/// then mu ~ N(mean, Sigma/kappa).
GaussianParams sample_niw(const NiwParams& p, Rng& rng);

/// Log density of an instantiated (mu, Sigma) pair under the prior.
double niw_log_pdf(const GaussianParams& g, const NiwParams& prior);

/// log Gamma_d(a), the multivariate gamma function.
double log_multigamma(int d, double a);

}  // namespace spcm

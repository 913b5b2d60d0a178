#include "spcm/similarity.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <exception>

namespace spcm {

namespace {

constexpr double condition_limit = 1e12;

void check_same_dim(const SpdMatrix& a, const SpdMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("matrices have different dimensions");
    }
}

void check_condition(const Eigen::VectorXd& eigenvalues_desc) {
    double cond = eigenvalues_desc(0) / eigenvalues_desc(eigenvalues_desc.size() - 1);
    if (!(cond <= condition_limit)) {
        throw NumericalError("condition number exceeds 1e12");
    }
}

Eigen::MatrixXd matrix_log(const EigenDecomposition& ed) {
    return ed.eigenvectors * ed.eigenvalues.array().log().matrix().asDiagonal() *
           ed.eigenvectors.transpose();
}

Eigen::MatrixXd inv_sqrt(const EigenDecomposition& ed) {
    return ed.eigenvectors * ed.eigenvalues.array().rsqrt().matrix().asDiagonal() *
           ed.eigenvectors.transpose();
}

Eigen::MatrixXd inverse_of(const EigenDecomposition& ed) {
    return ed.eigenvectors * ed.eigenvalues.array().inverse().matrix().asDiagonal() *
           ed.eigenvectors.transpose();
}

double logdet_spd(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Cholesky failed on SPD combination");
    }
    double ld = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) ld += 2.0 * std::log(llt.matrixL()(i, i));
    return ld;
}

double heaviside(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

double delta_from_norms(const Eigen::VectorXd& na, const Eigen::VectorXd& nb) {
    HomothetyStats ab = homothety_stats(na, nb);
    HomothetyStats ba = homothety_stats(nb, na);
    double h = heaviside(ab.mean - ba.mean);
    return h * ab.variance + (1.0 - h) * ba.variance;
}

double upsilon(double tau, int n) { return std::pow(10.0, tau * std::exp(-static_cast<double>(n))); }

// Per-matrix data shared by all cells of a pairwise computation.
struct Prepared {
    Eigen::VectorXd norms;        // spcm kinds
    Eigen::MatrixXd log_m;        // lerm
    Eigen::MatrixXd white;        // airm: Sigma^(-1/2)
    Eigen::MatrixXd inverse;      // kldm
    double logdet = 0.0;          // jbld
};

Prepared prepare(const SpdMatrix& m, SimilarityKind kind) {
    Prepared p;
    EigenDecomposition ed = eigendecompose(m);
    switch (kind) {
        case SimilarityKind::SpcmDelta:
        case SimilarityKind::Bspcm:
            p.norms = ed.eigenvalues.array().sqrt();
            break;
        case SimilarityKind::Lerm:
            p.log_m = matrix_log(ed);
            break;
        case SimilarityKind::Airm:
            check_condition(ed.eigenvalues);
            p.white = inv_sqrt(ed);
            break;
        case SimilarityKind::Kldm:
            check_condition(ed.eigenvalues);
            p.inverse = inverse_of(ed);
            break;
        case SimilarityKind::Jbld:
            p.logdet = ed.eigenvalues.array().log().sum();
            break;
    }
    return p;
}

double airm_from_white(const Eigen::MatrixXd& white_i, const Eigen::MatrixXd& sigma_j) {
    Eigen::MatrixXd m = white_i * sigma_j * white_i;
    m = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
        throw NumericalError("whitened product is not positive definite");
    }
    return std::sqrt(es.eigenvalues().array().log().square().sum());
}

double cell(const std::vector<SpdMatrix>& data, const std::vector<Prepared>& prep,
            SimilarityKind kind, double tau, int i, int j) {
    switch (kind) {
        case SimilarityKind::SpcmDelta:
            return delta_from_norms(prep[i].norms, prep[j].norms);
        case SimilarityKind::Bspcm:
            return 1.0 / (1.0 + upsilon(tau, data[i].dim()) *
                                    delta_from_norms(prep[i].norms, prep[j].norms));
        case SimilarityKind::Lerm:
            return (prep[i].log_m - prep[j].log_m).norm();
        case SimilarityKind::Airm:
            return airm_from_white(prep[i].white, data[j].matrix());
        case SimilarityKind::Kldm: {
            double n = static_cast<double>(data[i].dim());
            return 0.5 * ((prep[i].inverse * data[j].matrix()).trace() +
                          (prep[j].inverse * data[i].matrix()).trace()) -
                   n;
        }
        case SimilarityKind::Jbld:
            return logdet_spd(0.5 * (data[i].matrix() + data[j].matrix())) -
                   0.5 * (prep[i].logdet + prep[j].logdet);
    }
    throw Error("unknown similarity kind");
}

SimilarityMatrix empty_result(const std::vector<SpdMatrix>& data, SimilarityKind kind,
                              double tau) {
    const int m = static_cast<int>(data.size());
    if (m == 0) throw DegenerateDataError("empty matrix set");
    for (const auto& mat : data) check_same_dim(data[0], mat);
    SimilarityMatrix out;
    out.kind = kind;
    out.tau = tau;
    out.values.resize(m, m);
    out.values.diagonal().setConstant(kind == SimilarityKind::Bspcm ? 1.0 : 0.0);
    return out;
}

}  // namespace

const char* similarity_kind_name(SimilarityKind kind) {
    switch (kind) {
        case SimilarityKind::Airm: return "airm";
        case SimilarityKind::Lerm: return "lerm";
        case SimilarityKind::Kldm: return "kldm";
        case SimilarityKind::Jbld: return "jbld";
        case SimilarityKind::SpcmDelta: return "spcm";
        case SimilarityKind::Bspcm: return "bspcm";
    }
    return "?";
}

SimilarityKind similarity_kind_from_name(const std::string& name) {
    if (name == "airm") return SimilarityKind::Airm;
    if (name == "lerm") return SimilarityKind::Lerm;
    if (name == "kldm") return SimilarityKind::Kldm;
    if (name == "jbld") return SimilarityKind::Jbld;
    if (name == "spcm") return SimilarityKind::SpcmDelta;
    if (name == "bspcm") return SimilarityKind::Bspcm;
    throw SchemaError("unknown similarity kind: " + name);
}

Eigen::VectorXd spectral_axis_norms(const SpdMatrix& m) {
    return eigendecompose(m).eigenvalues.array().sqrt();
}

HomothetyStats homothety_stats(const Eigen::VectorXd& norms_a, const Eigen::VectorXd& norms_b) {
    if (norms_a.size() != norms_b.size()) {
        throw DimensionMismatchError("spectra have different lengths");
    }
    HomothetyStats s;
    s.ratios = norms_a.array() / norms_b.array();
    s.mean = s.ratios.mean();
    s.variance = (s.ratios.array() - s.mean).square().mean();
    return s;
}

double spcm_delta(const SpdMatrix& a, const SpdMatrix& b) {
    check_same_dim(a, b);
    return delta_from_norms(spectral_axis_norms(a), spectral_axis_norms(b));
}

double bspcm(const SpdMatrix& a, const SpdMatrix& b, double tau) {
    return 1.0 / (1.0 + upsilon(tau, a.dim()) * spcm_delta(a, b));
}

double standard_similarity(SimilarityKind kind, const SpdMatrix& a, const SpdMatrix& b) {
    if (kind == SimilarityKind::SpcmDelta || kind == SimilarityKind::Bspcm) {
        throw Error("standard_similarity covers airm/lerm/kldm/jbld only");
    }
    check_same_dim(a, b);
    std::vector<SpdMatrix> data{a, b};
    std::vector<Prepared> prep{prepare(a, kind), prepare(b, kind)};
    return cell(data, prep, kind, 0.0, 0, 1);
}

SimilarityMatrix pairwise_matrix(const std::vector<SpdMatrix>& data, SimilarityKind kind,
                                 double tau, Execution exec) {
    if (exec == Execution::Serial) return pairwise_matrix_serial(data, kind, tau);
    const int m = static_cast<int>(data.size());
    SimilarityMatrix out = empty_result(data, kind, tau);

    // Exceptions may not cross an OpenMP region boundary; capture and rethrow.
    std::exception_ptr failure = nullptr;

    std::vector<Prepared> prep(m);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
        try {
            prep[i] = prepare(data[i], kind);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    // Upper-triangle cells flattened into one index space so the dynamic
    // schedule balances the uneven row lengths.
    const long cells = static_cast<long>(m) * (m - 1) / 2;
#pragma omp parallel for schedule(dynamic, 16)
    for (long c = 0; c < cells; ++c) {
        try {
            long rem = c;
            int i = 0;
            while (rem >= m - 1 - i) {
                rem -= m - 1 - i;
                ++i;
            }
            int j = i + 1 + static_cast<int>(rem);
            double v = cell(data, prep, kind, tau, i, j);
            out.values(i, j) = v;
            out.values(j, i) = v;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

SimilarityMatrix pairwise_matrix_serial(const std::vector<SpdMatrix>& data, SimilarityKind kind,
                                        double tau) {
    const int m = static_cast<int>(data.size());
    SimilarityMatrix out = empty_result(data, kind, tau);
    std::vector<Prepared> prep(m);
    for (int i = 0; i < m; ++i) prep[i] = prepare(data[i], kind);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double v = cell(data, prep, kind, tau, i, j);
            out.values(i, j) = v;
            out.values(j, i) = v;
        }
    }
    return out;
}

}  // namespace spcm

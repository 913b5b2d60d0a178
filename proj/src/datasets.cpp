#include "spcm/datasets.hpp"

#include <json.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spcm/similarity.hpp"

namespace spcm {

using nlohmann::json;

void check_timeseries(const TimeSeriesSet& x) {
    if (x.series.empty()) throw DegenerateDataError("time-series set is empty");
    if (x.dim < 1) throw DimensionMismatchError("dimension must be positive");
    for (const auto& s : x.series) {
        if (s.cols() != x.dim) throw DimensionMismatchError("series dimension differs from set");
        if (s.rows() < 2) throw DegenerateDataError("series shorter than 2 steps");
    }
}

TimeSeriesSet standardize(const TimeSeriesSet& x) {
    check_timeseries(x);
    long total = 0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(x.dim);
    for (const auto& s : x.series) {
        mean += s.colwise().sum().transpose();
        total += s.rows();
    }
    mean /= static_cast<double>(total);
    Eigen::VectorXd var = Eigen::VectorXd::Zero(x.dim);
    for (const auto& s : x.series) {
        var += (s.rowwise() - mean.transpose()).array().square().colwise().sum().matrix().transpose();
    }
    var /= static_cast<double>(total);
    Eigen::VectorXd scale = var.array().sqrt();
    for (int d = 0; d < x.dim; ++d) {
        if (scale(d) < 1e-12) scale(d) = 1.0;  // constant dimension stays put
    }
    TimeSeriesSet out;
    out.dim = x.dim;
    for (const auto& s : x.series) {
        out.series.push_back(
            (s.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array());
    }
    return out;
}

namespace {

Eigen::MatrixXd symmetric_noise(int dim, Rng& rng) {
    Eigen::MatrixXd e(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) e(i, j) = rng.normal();
    return 0.5 * (e + e.transpose());
}

SpdMatrix floor_to_spd(const Eigen::MatrixXd& sym, double floor) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
    return SpdMatrix::validate(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
}

// Orthogonal matrix close to the identity for magnitude << 1.
Eigen::MatrixXd small_rotation(int dim, double magnitude, Rng& rng) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) += magnitude * rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

Eigen::VectorXd gaussian_draw(const Eigen::VectorXd& mean, const Eigen::MatrixXd& chol_l,
                              Rng& rng) {
    Eigen::VectorXd z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    return mean + chol_l * z;
}

}  // namespace

CovarianceDataset gen_toy3d(std::uint64_t seed) {
    Rng rng(seed);
    Eigen::Matrix3d base;
    base << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    SpdMatrix sigma1 = SpdMatrix::validate(base);

    // Scaled noisy copy; noise held at 3% of the base norm and the spectral
    // dissimilarity re-checked so the class structure survives.
    SpdMatrix sigma2 = sigma1;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Eigen::MatrixXd e = symmetric_noise(3, rng);
        e *= 0.03 * base.norm() / e.norm();
        double scale = rng.uniform(1.5, 3.0);
        SpdMatrix cand = floor_to_spd(scale * (base + e), 1e-6);
        if (spcm_delta(sigma1, cand) < 0.045) {
            sigma2 = cand;
            break;
        }
    }

    SpdMatrix sigma3 = apply_transform(sigma1, random_transform(3, 1.0, 1.0, rng));

    Eigen::Matrix3d fixed;
    fixed << 3.0, 0.5, 0.2, 0.5, 1.0, 0.1, 0.2, 0.1, 0.5;
    SpdMatrix sigma4 = SpdMatrix::validate(fixed);
    SpdMatrix sigma5 = apply_transform(sigma4, random_transform(3, 1.5, 3.0, rng));

    CovarianceDataset d;
    d.dim = 3;
    d.matrices = {sigma1, sigma2, sigma3, sigma4, sigma5};
    d.labels = {1, 1, 1, 2, 2};
    return d;
}

CovarianceDataset gen_toy6d(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SpdMatrix> bases;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        double e1 = std::abs(rng.normal());
        double e2 = std::abs(rng.normal());
        double e3 = std::abs(rng.normal());
        if (e1 < 0.05 || e2 < 0.05 || e3 < 0.05) continue;
        Eigen::VectorXd l1(6), l2(6), l3(6);
        l1 << 1, 1, 1, 1, 1, 1;
        l1 *= e1;
        l2 << 1, 10, 10, 10, 1, 1;
        l2 *= e2;
        l3 << 1, 10, 20, 30, 40, 50;
        l3 *= e3;
        std::vector<SpdMatrix> cand = {
            SpdMatrix::validate(Eigen::MatrixXd(l1.asDiagonal())),
            SpdMatrix::validate(Eigen::MatrixXd(l2.asDiagonal())),
            SpdMatrix::validate(Eigen::MatrixXd(l3.asDiagonal()))};
        // Cross-class contrast guard; the draw decides overall scale only.
        if (spcm_delta(cand[0], cand[1]) > 0.12 && spcm_delta(cand[0], cand[2]) > 0.12 &&
            spcm_delta(cand[1], cand[2]) > 0.12) {
            bases = std::move(cand);
            break;
        }
    }
    if (bases.empty()) throw DegenerateDataError("template draw failed");

    CovarianceDataset d;
    d.dim = 6;
    for (int cls = 0; cls < 3; ++cls) {
        for (int rep = 0; rep < 20; ++rep) {
            d.matrices.push_back(apply_transform(bases[cls], random_transform(6, 1.0, 1.0, rng)));
            d.labels.push_back(cls + 1);
        }
    }
    return d;
}

std::vector<GaussianParams> toy2d_emissions(const Toy2dParams& params) {
    std::vector<GaussianParams> theta(4);
    theta[0].mean = Eigen::Vector2d(0.0, 0.0);
    theta[0].covariance = Eigen::Vector2d(0.5, 0.5).asDiagonal();
    theta[1].mean = Eigen::Vector2d(8.0, 0.0);
    theta[1].covariance = Eigen::Vector2d(0.4, 0.05).asDiagonal();

    Eigen::Vector2d t(params.translation_x, params.translation_y);
    theta[2].mean = theta[1].mean + t;
    theta[2].covariance = params.eigen_scale * theta[1].covariance;

    double a = params.rotation_deg * M_PI / 180.0;
    Eigen::Matrix2d r;
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    theta[3].mean = theta[2].mean + t;
    theta[3].covariance = r * theta[2].covariance * r.transpose();
    return theta;
}

LabeledTimeSeriesSet gen_toy2d_timeseries(std::uint64_t seed, const Toy2dParams& params) {
    if (params.t_min < 2 || params.t_max < params.t_min) {
        throw DegenerateDataError("invalid series length range");
    }
    Rng rng(seed);
    std::vector<GaussianParams> theta = toy2d_emissions(params);
    std::vector<Eigen::MatrixXd> chol;
    for (const auto& g : theta) {
        chol.push_back(Eigen::LLT<Eigen::MatrixXd>(g.covariance).matrixL());
    }
    // Each series alternates between two models; neighbors share one model so
    // the feature matrix has genuine partial overlap.
    const int pair[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};

    LabeledTimeSeriesSet out;
    out.data.dim = 2;
    for (int i = 0; i < 4; ++i) {
        int t_len = params.t_min + rng.uniform_int(params.t_max - params.t_min + 1);
        Eigen::MatrixXd x(t_len, 2);
        std::vector<int> dep(t_len), inv(t_len);
        int local = rng.uniform_int(2);
        for (int t = 0; t < t_len; ++t) {
            if (t > 0 && rng.uniform() >= params.self_transition) local = 1 - local;
            int model = pair[i][local];
            x.row(t) = gaussian_draw(theta[model].mean, chol[model], rng).transpose();
            dep[t] = model + 1;
            inv[t] = (model == 0) ? 1 : 2;
        }
        out.data.series.push_back(std::move(x));
        out.labels_dependent.push_back(std::move(dep));
        out.labels_invariant.push_back(std::move(inv));
    }
    return out;
}

CovarianceDataset gen_spd_lattice(int rows, int cols, int regions, std::uint64_t seed) {
    const long total = static_cast<long>(rows) * cols;
    if (rows < 1 || cols < 1) throw DegenerateDataError("lattice must be non-empty");
    if (regions < 1 || regions > total) throw DegenerateDataError("region count out of range");
    Rng rng(seed);

    // Geometric eigenvalue ladders keep every template pair spectrally apart.
    std::vector<Eigen::MatrixXd> templates;
    for (int r = 0; r < regions; ++r) {
        double a = 1.5 * std::pow(2.0, r);
        Eigen::Vector3d ev(a * a, a, 1.0);
        Eigen::MatrixXd v = random_transform(3, 1.0, 1.0, rng).rotation;
        templates.push_back(v * ev.asDiagonal() * v.transpose());
    }

    CovarianceDataset d;
    d.dim = 3;
    for (long idx = 0; idx < total; ++idx) {
        int region = static_cast<int>(idx * regions / total);
        Eigen::MatrixXd q = small_rotation(3, 0.15, rng);
        d.matrices.push_back(SpdMatrix::validate(q * templates[region] * q.transpose()));
        d.labels.push_back(region + 1);
        d.coords.emplace_back(static_cast<int>(idx / cols), static_cast<int>(idx % cols));
    }
    return d;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_double_array(std::ostringstream& os, const double* data, long n) {
    os << '[';
    for (long i = 0; i < n; ++i) {
        if (i) os << ", ";
        os << fmt17(data[i]);
    }
    os << ']';
}

void write_int_array(std::ostringstream& os, const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    os << ']';
}

const json& require(const json& j, const char* field) {
    if (!j.is_object() || !j.contains(field)) {
        throw SchemaError(std::string("missing field: ") + field);
    }
    return j.at(field);
}

int require_int(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number_integer()) throw SchemaError(std::string(field) + " must be an integer");
    return v.get<int>();
}

std::vector<int> read_int_array(const json& v, const char* field) {
    if (!v.is_array()) throw SchemaError(std::string(field) + " must be an array");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) throw SchemaError(std::string(field) + " must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace

std::string covariance_dataset_to_json(const CovarianceDataset& d) {
    std::ostringstream os;
    os << "{\n  \"n_dim\": " << d.dim << ",\n  \"matrices\": [\n";
    for (std::size_t i = 0; i < d.matrices.size(); ++i) {
        os << "    ";
        const Eigen::MatrixXd& m = d.matrices[i].matrix();
        // Row-major flattening of a column-major store.
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
        write_double_array(os, rm.data(), rm.size());
        os << (i + 1 < d.matrices.size() ? ",\n" : "\n");
    }
    os << "  ]";
    if (!d.labels.empty()) {
        os << ",\n  \"labels\": ";
        write_int_array(os, d.labels);
    }
    if (!d.coords.empty()) {
        os << ",\n  \"coords\": [";
        for (std::size_t i = 0; i < d.coords.size(); ++i) {
            if (i) os << ", ";
            os << '[' << d.coords[i].first << ", " << d.coords[i].second << ']';
        }
        os << ']';
    }
    os << "\n}\n";
    return os.str();
}

CovarianceDataset covariance_dataset_from_json(const std::string& text) {
    json j = parse_document(text);
    CovarianceDataset d;
    d.dim = require_int(j, "n_dim");
    if (d.dim < 1) throw SchemaError("n_dim must be positive");
    const json& mats = require(j, "matrices");
    if (!mats.is_array() || mats.empty()) throw SchemaError("matrices must be a non-empty array");
    for (const auto& entry : mats) {
        if (!entry.is_array() || static_cast<int>(entry.size()) != d.dim * d.dim) {
            throw SchemaError("each matrix needs n_dim^2 entries");
        }
        Eigen::MatrixXd m(d.dim, d.dim);
        int idx = 0;
        for (const auto& v : entry) {
            if (!v.is_number()) throw SchemaError("matrix entries must be numbers");
            m(idx / d.dim, idx % d.dim) = v.get<double>();
            ++idx;
        }
        d.matrices.push_back(SpdMatrix::validate(m));
    }
    if (j.contains("labels")) {
        d.labels = read_int_array(j.at("labels"), "labels");
        if (d.labels.size() != d.matrices.size()) throw SchemaError("labels length mismatch");
    }
    if (j.contains("coords")) {
        const json& c = j.at("coords");
        if (!c.is_array() || c.size() != d.matrices.size()) {
            throw SchemaError("coords length mismatch");
        }
        for (const auto& e : c) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw SchemaError("coords must be [row, col] integer pairs");
            }
            d.coords.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return d;
}

std::string timeseries_set_to_json(const LabeledTimeSeriesSet& d) {
    std::ostringstream os;
    os << "{\n  \"dim\": " << d.data.dim << ",\n  \"series\": [\n";
    for (std::size_t i = 0; i < d.data.series.size(); ++i) {
        const Eigen::MatrixXd& x = d.data.series[i];
        os << "    {\"data\": [\n";
        for (Eigen::Index t = 0; t < x.rows(); ++t) {
            os << "      ";
            Eigen::RowVectorXd row = x.row(t);
            write_double_array(os, row.data(), row.size());
            os << (t + 1 < x.rows() ? ",\n" : "\n");
        }
        os << "    ]";
        if (i < d.labels_dependent.size() && !d.labels_dependent[i].empty()) {
            os << ",\n    \"labels_dependent\": ";
            write_int_array(os, d.labels_dependent[i]);
        }
        if (i < d.labels_invariant.size() && !d.labels_invariant[i].empty()) {
            os << ",\n    \"labels_invariant\": ";
            write_int_array(os, d.labels_invariant[i]);
        }
        os << '}' << (i + 1 < d.data.series.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

LabeledTimeSeriesSet timeseries_set_from_json(const std::string& text) {
    json j = parse_document(text);
    LabeledTimeSeriesSet d;
    d.data.dim = require_int(j, "dim");
    if (d.data.dim < 1) throw SchemaError("dim must be positive");
    const json& series = require(j, "series");
    if (!series.is_array() || series.empty()) throw SchemaError("series must be a non-empty array");
    for (const auto& s : series) {
        const json& rows = require(s, "data");
        if (!rows.is_array() || rows.size() < 2) {
            throw SchemaError("each series needs at least 2 rows");
        }
        Eigen::MatrixXd x(rows.size(), d.data.dim);
        Eigen::Index t = 0;
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != d.data.dim) {
                throw SchemaError("row length differs from dim");
            }
            int c = 0;
            for (const auto& v : row) {
                if (!v.is_number()) throw SchemaError("data entries must be numbers");
                x(t, c++) = v.get<double>();
            }
            ++t;
        }
        std::vector<int> dep, inv;
        if (s.contains("labels_dependent")) {
            dep = read_int_array(s.at("labels_dependent"), "labels_dependent");
            if (dep.size() != static_cast<std::size_t>(x.rows())) {
                throw SchemaError("labels_dependent length mismatch");
            }
        }
        if (s.contains("labels_invariant")) {
            inv = read_int_array(s.at("labels_invariant"), "labels_invariant");
            if (inv.size() != static_cast<std::size_t>(x.rows())) {
                throw SchemaError("labels_invariant length mismatch");
            }
        }
        d.data.series.push_back(std::move(x));
        d.labels_dependent.push_back(std::move(dep));
        d.labels_invariant.push_back(std::move(inv));
    }
    check_timeseries(d.data);
    return d;
}

void save_covariance_dataset(const CovarianceDataset& d, const std::string& path) {
    spill(path, covariance_dataset_to_json(d));
}

CovarianceDataset load_covariance_dataset(const std::string& path) {
    return covariance_dataset_from_json(slurp(path));
}

void save_timeseries_set(const LabeledTimeSeriesSet& d, const std::string& path) {
    spill(path, timeseries_set_to_json(d));
}

LabeledTimeSeriesSet load_timeseries_set(const std::string& path) {
    return timeseries_set_from_json(slurp(path));
}

}  // namespace spcm

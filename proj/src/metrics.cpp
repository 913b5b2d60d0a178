#include "spcm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace spcm {

namespace {

struct Contingency {
    std::vector<std::vector<long>> counts;  // truth class x predicted class
    std::vector<long> truth_sizes;
    std::vector<long> pred_sizes;
    long total = 0;
};

Contingency tabulate(const std::vector<int>& truth, const std::vector<int>& pred) {
    if (truth.size() != pred.size()) {
        throw LengthMismatchError("label sequences differ in length");
    }
    if (truth.empty()) throw DegenerateDataError("empty label sequences");
    std::map<int, int> tmap, pmap;
    for (int t : truth) tmap.emplace(t, static_cast<int>(tmap.size()));
    for (int p : pred) pmap.emplace(p, static_cast<int>(pmap.size()));
    Contingency c;
    c.total = static_cast<long>(truth.size());
    c.counts.assign(tmap.size(), std::vector<long>(pmap.size(), 0));
    c.truth_sizes.assign(tmap.size(), 0);
    c.pred_sizes.assign(pmap.size(), 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        int a = tmap[truth[i]];
        int b = pmap[pred[i]];
        ++c.counts[a][b];
        ++c.truth_sizes[a];
        ++c.pred_sizes[b];
    }
    return c;
}

double entropy(const std::vector<long>& sizes, long total) {
    double h = 0.0;
    for (long s : sizes) {
        if (s > 0) {
            double p = static_cast<double>(s) / total;
            h -= p * std::log(p);
        }
    }
    return h;
}

double mutual_information(const Contingency& c) {
    double mi = 0.0;
    for (std::size_t a = 0; a < c.counts.size(); ++a) {
        for (std::size_t b = 0; b < c.counts[a].size(); ++b) {
            long n = c.counts[a][b];
            if (n > 0) {
                double p = static_cast<double>(n) / c.total;
                double pa = static_cast<double>(c.truth_sizes[a]) / c.total;
                double pb = static_cast<double>(c.pred_sizes[b]) / c.total;
                mi += p * std::log(p / (pa * pb));
            }
        }
    }
    return mi;
}

bool same_partition(const Contingency& c) {
    if (c.counts.size() != c.pred_sizes.size()) return false;
    for (const auto& row : c.counts) {
        long nonzero = 0;
        for (long n : row) {
            if (n > 0) ++nonzero;
        }
        if (nonzero != 1) return false;
    }
    return true;
}

}  // namespace

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int rows = static_cast<int>(cost.size());
    if (rows == 0) return {};
    const int cols = static_cast<int>(cost[0].size());
    const int n = std::max(rows, cols);
    constexpr double inf = std::numeric_limits<double>::infinity();

    // Square padding with zero cost; shortest-augmenting-path formulation with
    // 1-based potentials, column 0 as the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double c = (i0 <= rows && j <= cols) ? cost[i0 - 1][j - 1] : 0.0;
                double cur = c - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> match(rows, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] >= 1 && p[j] <= rows && j <= cols) match[p[j] - 1] = j - 1;
    }
    return match;
}

ClusteringScores clustering_scores(const std::vector<int>& truth, const std::vector<int>& pred) {
    Contingency c = tabulate(truth, pred);
    ClusteringScores out;

    // Purity: each predicted cluster votes for its dominant truth class.
    long pure = 0;
    for (std::size_t b = 0; b < c.pred_sizes.size(); ++b) {
        long best = 0;
        for (std::size_t a = 0; a < c.counts.size(); ++a) best = std::max(best, c.counts[a][b]);
        pure += best;
    }
    out.purity = static_cast<double>(pure) / c.total;

    double ht = entropy(c.truth_sizes, c.total);
    double hp = entropy(c.pred_sizes, c.total);
    double denom = 0.5 * (ht + hp);
    if (denom < 1e-15) {
        out.nmi = same_partition(c) ? 1.0 : 0.0;
    } else {
        out.nmi = mutual_information(c) / denom;
    }

    // Segment-weighted best F over predicted clusters.
    double f = 0.0;
    for (std::size_t a = 0; a < c.counts.size(); ++a) {
        double best = 0.0;
        for (std::size_t b = 0; b < c.pred_sizes.size(); ++b) {
            long n = c.counts[a][b];
            if (n == 0) continue;
            double precision = static_cast<double>(n) / c.pred_sizes[b];
            double recall = static_cast<double>(n) / c.truth_sizes[a];
            best = std::max(best, 2.0 * precision * recall / (precision + recall));
        }
        f += (static_cast<double>(c.truth_sizes[a]) / c.total) * best;
    }
    out.f = f;
    return out;
}

SegmentationScores segmentation_scores(const std::vector<int>& truth, const std::vector<int>& pred) {
    Contingency c = tabulate(truth, pred);
    SegmentationScores out;

    // Optimal correspondence maps predicted classes onto truth classes.
    const std::size_t kp = c.pred_sizes.size();
    const std::size_t kt = c.truth_sizes.size();
    std::vector<std::vector<double>> cost(kp, std::vector<double>(kt, 0.0));
    for (std::size_t b = 0; b < kp; ++b)
        for (std::size_t a = 0; a < kt; ++a) cost[b][a] = -static_cast<double>(c.counts[a][b]);
    std::vector<int> match = hungarian(cost);
    long agree = 0;
    for (std::size_t b = 0; b < kp; ++b) {
        if (match[b] >= 0) agree += c.counts[match[b]][b];
    }
    out.hamming = 1.0 - static_cast<double>(agree) / c.total;

    // Directional refinement errors summed over positions, cheaper via counts:
    // positions with truth class a and predicted class b contribute
    // (|a| - n_ab)/|a| each in the truth-to-prediction direction.
    double e_tp = 0.0, e_pt = 0.0;
    for (std::size_t a = 0; a < kt; ++a) {
        for (std::size_t b = 0; b < kp; ++b) {
            long n = c.counts[a][b];
            if (n == 0) continue;
            e_tp += n * (static_cast<double>(c.truth_sizes[a] - n) / c.truth_sizes[a]);
            e_pt += n * (static_cast<double>(c.pred_sizes[b] - n) / c.pred_sizes[b]);
        }
    }
    out.gce = std::min(e_tp, e_pt) / c.total;

    double vi = entropy(c.truth_sizes, c.total) + entropy(c.pred_sizes, c.total) -
                2.0 * mutual_information(c);
    out.vi = std::max(0.0, vi);
    return out;
}

}  // namespace spcm

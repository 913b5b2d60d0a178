#pragma once

#include <vector>

#include "spcm/errors.hpp"

namespace spcm {

struct ClusteringScores {
    double purity = 0.0;
    double nmi = 0.0;
    double f = 0.0;
};

struct SegmentationScores {
    double hamming = 0.0;
    double gce = 0.0;
    double vi = 0.0;
};

/// Purity, normalized mutual information and segment-weighted F-measure of a
/// predicted labeling against ground truth. Labels are opaque integers.
/// NMI's 0/0 case (two trivial partitions) resolves to 1 when the partitions
/// coincide and 0 otherwise.
ClusteringScores clustering_scores(const std::vector<int>& truth, const std::vector<int>& pred);

/// Hamming distance after the optimal prediction-to-truth label assignment
/// (Hungarian on overlap counts), global consistency error, and variation of
/// information in nats.
SegmentationScores segmentation_scores(const std::vector<int>& truth, const std::vector<int>& pred);

/// Minimum-cost assignment for a rectangular cost matrix (rows assigned to
/// distinct columns). Returns for each row the chosen column, or -1 when rows
/// exceed columns and the row stays unassigned.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace spcm

#pragma once

#include <vector>

#include "mlgl/clustering.hpp"

namespace mlgl {

/// External clustering-quality indices of a predicted labeling against a
/// reference labeling.
struct MetricReport {
    double accuracy = 0.0;       // best one-to-one label matching
    double purity = 0.0;
    double nmi = 0.0;            // geometric-mean normalization, natural logs
    double rand_index = 0.0;
    double adjusted_rand = 0.0;
};

/// All five indices from the pred-vs-truth contingency table. Labelings must
/// be the same length, nonempty, with nonnegative labels. Accuracy maximizes
/// agreement over one-to-one matchings of predicted to true clusters
/// (rectangular tables are padded square).
MetricReport evaluate(const ClusterLabels& pred, const ClusterLabels& truth);

namespace detail {

/// Minimum-cost perfect matching on a square cost matrix; returns the column
/// assigned to each row.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace detail

}  // namespace mlgl

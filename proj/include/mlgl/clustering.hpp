#pragma once

#include <cstdint>
#include <vector>

#include "mlgl/spectral.hpp"

namespace mlgl {

/// Cluster assignment for n nodes with labels in {0, ..., K-1}.
struct ClusterLabels {
    std::vector<int> labels;

    int n() const { return static_cast<int>(labels.size()); }
    int n_clusters() const;  // 1 + max label, 0 when empty

    bool operator==(const ClusterLabels& other) const = default;
};

struct KMeansResult {
    ClusterLabels labels;
    double inertia = 0.0;
};

/// One run of Lloyd's algorithm with k-means++ seeding on the rows of
/// `points`. Empty clusters are repaired by promoting the point farthest from
/// its centroid. Stops when assignments stabilize or after 300 iterations.
KMeansResult kmeans_run(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

ClusterLabels kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

/// Spectral clustering of a Laplacian: embed nodes by the eigenvectors of the
/// K smallest eigenvalues, then k-means over 50 seed-derived restarts keeping
/// the lowest inertia (ties go to the earliest restart).
ClusterLabels spectral_clustering(const LaplacianMatrix& L, int k, std::uint64_t seed);

}  // namespace mlgl

#include "mlgl/clustering.hpp"

#include <algorithm>
#include <limits>

#include "mlgl/rng.hpp"

namespace mlgl {

int ClusterLabels::n_clusters() const {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

namespace {

constexpr int kLloydMaxIters = 300;
constexpr int kRestarts = 50;

// Squared distance from every point to its nearest already-chosen centroid,
// updated incrementally during k-means++ seeding.
void kmeanspp_seed(const Eigen::MatrixXd& points, int k, std::mt19937_64& g,
                   Eigen::MatrixXd& centroids) {
    const int n = static_cast<int>(points.rows());
    std::vector<char> chosen(n, 0);

    const int first = rng::uniform_int(g, n);
    centroids.row(0) = points.row(first);
    chosen[first] = 1;

    Eigen::VectorXd d2(n);
    for (int i = 0; i < n; ++i) {
        d2[i] = (points.row(i) - centroids.row(0)).squaredNorm();
    }

    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        int pick = -1;
        if (total > 0.0) {
            const double r = rng::uniform01(g) * total;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) { pick = i; break; }
            }
            if (pick < 0) pick = n - 1;  // guard against rounding in acc
        } else {
            // All remaining points coincide with a centroid; take the lowest
            // index not yet used so the run still yields k centroids.
            for (int i = 0; i < n; ++i) {
                if (!chosen[i]) { pick = i; break; }
            }
            if (pick < 0) pick = 0;
        }
        chosen[pick] = 1;
        centroids.row(c) = points.row(pick);
        for (int i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], (points.row(i) - centroids.row(c)).squaredNorm());
        }
    }
}

}  // namespace

KMeansResult kmeans_run(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (n < 1) throw InvalidArgument("kmeans needs at least one point");
    if (k < 1 || k > n) {
        throw InvalidArgument("kmeans requires 1 <= k <= n, got k=" +
                              std::to_string(k) + " n=" + std::to_string(n));
    }
    if (!points.allFinite()) throw InvalidArgument("kmeans input has non-finite entries");

    auto g = rng::make_rng(seed);
    Eigen::MatrixXd centroids(k, points.cols());
    kmeanspp_seed(points, k, g, centroids);

    std::vector<int> labels(n, -1);
    std::vector<int> prev(n, -2);
    std::vector<int> counts(k, 0);

    for (int iter = 0; iter < kLloydMaxIters; ++iter) {
        // Assignment step; distance ties go to the lower cluster index.
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d = (points.row(i) - centroids.row(c)).squaredNorm();
                if (d < best_d) { best_d = d; best = c; }
            }
            labels[i] = best;
            ++counts[best];
        }

        // Repair empty clusters: hand each one the point currently farthest
        // from its centroid, drawn from a cluster that can spare it.
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            int donor = -1;
            double worst = -1.0;
            for (int i = 0; i < n; ++i) {
                if (counts[labels[i]] < 2) continue;
                const double d = (points.row(i) - centroids.row(labels[i])).squaredNorm();
                if (d > worst) { worst = d; donor = i; }
            }
            if (donor < 0) continue;  // k == n with duplicates; nothing to move
            --counts[labels[donor]];
            labels[donor] = c;
            ++counts[c];
        }

        if (labels == prev) break;
        prev = labels;

        // Update step.
        centroids.setZero();
        for (int i = 0; i < n; ++i) centroids.row(labels[i]) += points.row(i);
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) centroids.row(c) /= static_cast<double>(counts[c]);
        }
    }

    KMeansResult out;
    out.labels.labels = std::move(labels);
    out.inertia = 0.0;
    for (int i = 0; i < n; ++i) {
        out.inertia += (points.row(i) - centroids.row(out.labels.labels[i])).squaredNorm();
    }
    return out;
}

ClusterLabels kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
    return kmeans_run(points, k, seed).labels;
}

ClusterLabels spectral_clustering(const LaplacianMatrix& L, int k, std::uint64_t seed) {
    const int n = L.n_nodes();
    if (k < 1 || k > n) {
        throw InvalidArgument("spectral clustering requires 1 <= k <= n");
    }
    const EigenDecomposition eig = eigendecompose(L);
    const Eigen::MatrixXd embedding = eig.eigenvectors.leftCols(k);

    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < kRestarts; ++r) {
        KMeansResult run = kmeans_run(embedding, k, rng::stream_seed(seed, r));
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return std::move(best.labels);
}

}  // namespace mlgl

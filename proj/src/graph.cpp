#include "mlgl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlgl {

int edge_index(int i, int j, int n) {
    if (i < 0 || j >= n || i >= j) {
        throw InvalidArgument("edge_index requires 0 <= i < j < n, got i=" +
                              std::to_string(i) + " j=" + std::to_string(j) +
                              " n=" + std::to_string(n));
    }
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_pair(int e, int n) {
    if (e < 0 || e >= edge_count(n)) {
        throw InvalidArgument("edge position out of range: " + std::to_string(e));
    }
    int i = 0;
    while (e >= n - i - 1) {
        e -= n - i - 1;
        ++i;
    }
    return {i, i + 1 + e};
}

EdgeWeightVector::EdgeWeightVector(int n, Eigen::VectorXd w)
    : n_nodes(n), weights(std::move(w)) {
    if (n < 1) {
        throw InvalidArgument("edge-weight vector needs at least one node");
    }
    if (weights.size() != edge_count(n)) {
        throw InvalidArgument("edge-weight vector has length " +
                              std::to_string(weights.size()) + ", expected " +
                              std::to_string(edge_count(n)) + " for n=" +
                              std::to_string(n));
    }
    for (Eigen::Index e = 0; e < weights.size(); ++e) {
        if (!std::isfinite(weights[e]) || weights[e] < 0.0) {
            throw InvalidArgument("edge weight at position " + std::to_string(e) +
                                  " is negative or not finite");
        }
    }
}

EdgeWeightVector EdgeWeightVector::zeros(int n) {
    return EdgeWeightVector(n, Eigen::VectorXd::Zero(edge_count(n)));
}

double EdgeWeightVector::operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    return weights[edge_index(i, j, n_nodes)];
}

Eigen::MatrixXd weight_matrix(const EdgeWeightVector& w) {
    const int n = w.n_nodes;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int e = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++e) {
            m(i, j) = w.weights[e];
            m(j, i) = w.weights[e];
        }
    }
    return m;
}

Eigen::VectorXd upper_triangular(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd v(edge_count(n));
    int e = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++e) {
            v[e] = m(i, j);
        }
    }
    return v;
}

Layer Layer::from_adjacency(Eigen::MatrixXd adjacency) {
    const auto n = adjacency.rows();
    if (n == 0 || adjacency.cols() != n) {
        throw InvalidArgument("adjacency matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0.0) {
            throw InvalidArgument("adjacency diagonal must be zero at node " +
                                  std::to_string(i));
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = adjacency(i, j);
            if (a != 0.0 && a != 1.0) {
                throw InvalidArgument("layer adjacency must be binary; entry (" +
                                      std::to_string(i) + "," + std::to_string(j) +
                                      ") is " + std::to_string(a));
            }
            if (a != adjacency(j, i)) {
                throw InvalidArgument("layer adjacency must be symmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    Layer layer;
    layer.adjacency_ = std::move(adjacency);
    layer.neighborhoods_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (layer.adjacency_(i, j) == 1.0) {
                layer.neighborhoods_[i].push_back(static_cast<int>(j));
            }
        }
    }
    return layer;
}

Eigen::MatrixXd Layer::degree_matrix() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_nodes(), n_nodes());
    for (int i = 0; i < n_nodes(); ++i) {
        d(i, i) = static_cast<double>(degree(i));
    }
    return d;
}

Eigen::MatrixXd Layer::laplacian() const {
    return degree_matrix() - adjacency_;
}

MultilayerGraph::MultilayerGraph(std::vector<Layer> layers,
                                 std::vector<std::string> node_ids)
    : layers_(std::move(layers)), node_ids_(std::move(node_ids)) {
    if (layers_.empty()) {
        throw InvalidArgument("a multilayer graph needs at least one layer");
    }
    n_nodes_ = layers_.front().n_nodes();
    for (const Layer& layer : layers_) {
        if (layer.n_nodes() != n_nodes_) {
            throw InvalidArgument("all layers must share the same node count");
        }
    }
    if (!node_ids_.empty() && static_cast<int>(node_ids_.size()) != n_nodes_) {
        throw InvalidArgument("node_ids length must match the node count");
    }
}

namespace {

constexpr double kOffDiagonalTol = 1e-9;

// Extracts -offdiagonal as weights, clamping round-off positives to zero.
Eigen::VectorXd laplacian_weights(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::VectorXd w(edge_count(n));
    int e = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++e) {
            if (m(i, j) > kOffDiagonalTol) {
                throw InvalidArgument(
                    "not a Laplacian: positive off-diagonal " +
                    std::to_string(m(i, j)) + " at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
            }
            w[e] = m(i, j) > 0.0 ? 0.0 : -m(i, j);
        }
    }
    return w;
}

}  // namespace

LaplacianMatrix LaplacianMatrix::from_matrix(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw InvalidArgument("Laplacian must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw InvalidArgument("Laplacian has non-finite entries");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kOffDiagonalTol) {
        throw InvalidArgument("Laplacian must be symmetric");
    }
    const double row_sum_tol = 1e-12 * static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(m.row(i).sum()) > row_sum_tol) {
            throw InvalidArgument("Laplacian row " + std::to_string(i) +
                                  " sums to " + std::to_string(m.row(i).sum()) +
                                  ", expected zero");
        }
    }
    // Canonicalize through the weight vector so the stored matrix satisfies
    // the invariants exactly.
    EdgeWeightVector w(static_cast<int>(n), laplacian_weights(m));
    return laplacian_from_weights(w);
}

LaplacianMatrix laplacian_from_weights(const EdgeWeightVector& w) {
    const int n = w.n_nodes;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int e = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++e) {
            m(i, j) = -w.weights[e];
            m(j, i) = -w.weights[e];
        }
    }
    // Diagonal as negated row sum of the off-diagonals.
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i) s += m(i, j);
        }
        m(i, i) = -s;
    }
    return LaplacianMatrix(std::move(m));
}

EdgeWeightVector weights_from_laplacian(const LaplacianMatrix& L) {
    return EdgeWeightVector(L.n_nodes(), laplacian_weights(L.matrix()));
}

Layer knn_layer(const Eigen::MatrixXd& points, int k) {
    const int m = static_cast<int>(points.rows());
    if (m < 2) {
        throw InvalidArgument("kNN graph needs at least two points");
    }
    if (k < 1 || k >= m) {
        throw InvalidArgument("kNN neighbor count must satisfy 1 <= k < " +
                              std::to_string(m) + ", got " + std::to_string(k));
    }
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> d2(m);
        for (int j = 0; j < m; ++j) {
            d2[j] = (points.row(i) - points.row(j)).squaredNorm();
        }
        std::vector<int> order;
        order.reserve(m - 1);
        for (int j = 0; j < m; ++j) {
            if (j != i) order.push_back(j);
        }
        // Ties resolve to the lower index; std::sort on (distance, index) is
        // deterministic.
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return d2[a] != d2[b] ? d2[a] < d2[b] : a < b;
        });
        for (int t = 0; t < k; ++t) {
            adjacency(i, order[t]) = 1.0;
            adjacency(order[t], i) = 1.0;  // OR symmetrization
        }
    }
    return Layer::from_adjacency(std::move(adjacency));
}

}  // namespace mlgl

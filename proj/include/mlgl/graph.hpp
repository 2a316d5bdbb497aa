#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "mlgl/errors.hpp"

namespace mlgl {

/// Number of undirected edges on n nodes.
constexpr int edge_count(int n) { return n * (n - 1) / 2; }

/// Row-major upper-triangular index of the pair (i, j), 0 <= i < j < n.
int edge_index(int i, int j, int n);

/// Inverse of edge_index: the pair (i, j) stored at position e.
std::pair<int, int> edge_pair(int e, int n);

/// Nonnegative edge weights of an undirected graph on n_nodes nodes, stored
/// in row-major upper-triangular order. This is the optimization variable.
struct EdgeWeightVector {
    int n_nodes = 0;
    Eigen::VectorXd weights;

    EdgeWeightVector() = default;

    /// Validates length, finiteness and nonnegativity.
    EdgeWeightVector(int n, Eigen::VectorXd w);

    static EdgeWeightVector zeros(int n);

    /// Weight of the pair {i, j}, i != j.
    double operator()(int i, int j) const;

    bool operator==(const EdgeWeightVector& other) const = default;
};

/// Symmetric weight matrix with zero diagonal from an edge-weight vector.
Eigen::MatrixXd weight_matrix(const EdgeWeightVector& w);

/// Row-major upper-triangular entries of a symmetric matrix.
Eigen::VectorXd upper_triangular(const Eigen::MatrixXd& m);

/// One observed layer: a binary, symmetric, hollow adjacency matrix plus the
/// neighborhood sets derived from it.
class Layer {
public:
    /// Rejects non-square, non-symmetric, non-binary or non-hollow input.
    /// Weighted adjacencies are rejected, not binarized.
    static Layer from_adjacency(Eigen::MatrixXd adjacency);

    int n_nodes() const { return static_cast<int>(adjacency_.rows()); }
    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    const std::vector<int>& neighbors(int i) const { return neighborhoods_.at(i); }
    int degree(int i) const { return static_cast<int>(neighborhoods_.at(i).size()); }

    Eigen::MatrixXd degree_matrix() const;
    Eigen::MatrixXd laplacian() const;  // D - W

    bool operator==(const Layer& other) const { return adjacency_ == other.adjacency_; }

private:
    Layer() = default;
    Eigen::MatrixXd adjacency_;
    std::vector<std::vector<int>> neighborhoods_;
};

/// S >= 1 layers of edges over one shared node set.
class MultilayerGraph {
public:
    explicit MultilayerGraph(std::vector<Layer> layers,
                             std::vector<std::string> node_ids = {});

    int n_nodes() const { return n_nodes_; }
    int n_layers() const { return static_cast<int>(layers_.size()); }
    const Layer& layer(int s) const { return layers_.at(s); }
    const std::vector<Layer>& layers() const { return layers_; }
    const std::vector<std::string>& node_ids() const { return node_ids_; }

    bool operator==(const MultilayerGraph& other) const = default;

private:
    int n_nodes_ = 0;
    std::vector<Layer> layers_;
    std::vector<std::string> node_ids_;
};

/// Combinatorial graph Laplacian: symmetric, nonpositive off-diagonals,
/// rows summing to zero.
class LaplacianMatrix {
public:
    /// Validates and canonicalizes an externally built matrix. Off-diagonal
    /// entries above +1e-9 or row sums beyond 1e-12 * N are rejected.
    static LaplacianMatrix from_matrix(const Eigen::MatrixXd& m);

    int n_nodes() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& matrix() const { return m_; }

private:
    friend LaplacianMatrix laplacian_from_weights(const EdgeWeightVector&);
    explicit LaplacianMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
    Eigen::MatrixXd m_;
};

/// The linear operator taking edge weights to the combinatorial Laplacian.
/// Diagonal entries are the negated sums of their rows' off-diagonals, so
/// row sums vanish by construction.
LaplacianMatrix laplacian_from_weights(const EdgeWeightVector& w);

/// Inverse of laplacian_from_weights on its image; the round trip through
/// both maps reproduces the weights bit-for-bit.
EdgeWeightVector weights_from_laplacian(const LaplacianMatrix& L);

/// k-nearest-neighbor graph of a point cloud (rows of `points`) under
/// Euclidean distance, symmetrized by OR. Distance ties break toward the
/// lower point index. Requires 1 <= k < number of points.
Layer knn_layer(const Eigen::MatrixXd& points, int k);

}  // namespace mlgl

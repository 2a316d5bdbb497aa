#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "mlgl/graph.hpp"
#include "mlgl/rng.hpp"

using namespace mlgl;

namespace {

// Brute-force kNN reference: sort candidate neighbors per node by (distance,
// index), take the first k, OR the two directions together.
Eigen::MatrixXd knn_reference(const Eigen::MatrixXd& points, int k) {
    const int m = static_cast<int>(points.rows());
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<double, int>> cand;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            cand.emplace_back((points.row(i) - points.row(j)).squaredNorm(), j);
        }
        std::sort(cand.begin(), cand.end());
        for (int t = 0; t < k; ++t) {
            adj(i, cand[t].second) = 1.0;
            adj(cand[t].second, i) = 1.0;
        }
    }
    return adj;
}

Eigen::MatrixXd random_cloud(int m, int d, std::uint64_t seed) {
    auto g = rng::make_rng(seed);
    Eigen::MatrixXd pts(m, d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) pts(i, j) = rng::normal01(g);
    return pts;
}

}  // namespace

TEST_CASE("edge_index enumerates pairs row-major") {
    CHECK(edge_index(0, 1, 4) == 0);
    CHECK(edge_index(2, 3, 4) == 5);

    // Independent enumeration oracle: walk all pairs of N=4 in row-major
    // order and record positions.
    int pos = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            CHECK(edge_index(i, j, 4) == pos);
            ++pos;
        }
    }
    CHECK(edge_index(1, 3, 4) == 4);
}

TEST_CASE("edge_index is a bijection onto 0..E-1") {
    for (int n : {2, 3, 5, 9}) {
        std::set<int> seen;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) seen.insert(edge_index(i, j, n));
        CHECK(static_cast<int>(seen.size()) == edge_count(n));
        CHECK(*seen.begin() == 0);
        CHECK(*seen.rbegin() == edge_count(n) - 1);
    }
}

TEST_CASE("edge_pair inverts edge_index") {
    const int n = 7;
    for (int e = 0; e < edge_count(n); ++e) {
        auto [i, j] = edge_pair(e, n);
        CHECK(i < j);
        CHECK(edge_index(i, j, n) == e);
    }
}

TEST_CASE("edge_index rejects bad pairs") {
    CHECK_THROWS_AS(edge_index(1, 1, 4), InvalidArgument);
    CHECK_THROWS_AS(edge_index(2, 1, 4), InvalidArgument);
    CHECK_THROWS_AS(edge_index(-1, 1, 4), InvalidArgument);
    CHECK_THROWS_AS(edge_index(0, 4, 4), InvalidArgument);
}

TEST_CASE("laplacian_from_weights on small graphs") {
    Eigen::Vector3d triangle(1, 1, 1);
    Eigen::MatrixXd L = laplacian_from_weights(EdgeWeightVector(3, triangle)).matrix();
    Eigen::MatrixXd want(3, 3);
    want << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    CHECK(L == want);

    Eigen::Vector3d empty(0, 0, 0);
    CHECK(laplacian_from_weights(EdgeWeightVector(3, empty)).matrix()
          == Eigen::MatrixXd::Zero(3, 3));

    Eigen::Vector3d path(1, 0, 1);  // edges (0,1) and (1,2)
    Eigen::MatrixXd Lp = laplacian_from_weights(EdgeWeightVector(3, path)).matrix();
    Eigen::MatrixXd wantp(3, 3);
    wantp << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(Lp == wantp);
}

TEST_CASE("laplacian row sums vanish") {
    // The diagonal is the negated off-diagonal sum; re-summing the row in a
    // different order leaves only rounding residue, never a real imbalance.
    auto g = rng::make_rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 3 + rep;
        Eigen::VectorXd w(edge_count(n));
        for (int e = 0; e < w.size(); ++e) w[e] = rng::uniform(g, 0.0, 5.0);
        Eigen::MatrixXd L = laplacian_from_weights(EdgeWeightVector(n, w)).matrix();
        for (int i = 0; i < n; ++i) CHECK(std::abs(L.row(i).sum()) <= 1e-12);
    }
}

TEST_CASE("weights round-trip through the Laplacian bit-for-bit") {
    auto g = rng::make_rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + rep % 9;
        Eigen::VectorXd w(edge_count(n));
        for (int e = 0; e < w.size(); ++e) w[e] = rng::uniform(g, 0.0, 3.0);
        EdgeWeightVector ew(n, w);
        EdgeWeightVector back = weights_from_laplacian(laplacian_from_weights(ew));
        CHECK(back.weights == ew.weights);
    }
}

TEST_CASE("positive off-diagonals are rejected") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 0.1, 0.1, 1;
    CHECK_THROWS_AS(LaplacianMatrix::from_matrix(bad), InvalidArgument);
}

TEST_CASE("EdgeWeightVector validates input") {
    Eigen::Vector3d neg(1, -0.5, 1);
    CHECK_THROWS_AS(EdgeWeightVector(3, neg), InvalidArgument);
    Eigen::Vector2d shorter(1, 1);
    CHECK_THROWS_AS(EdgeWeightVector(3, shorter), InvalidArgument);
    Eigen::Vector3d inf(1, std::numeric_limits<double>::infinity(), 1);
    CHECK_THROWS_AS(EdgeWeightVector(3, inf), InvalidArgument);
}

TEST_CASE("Layer validates adjacency") {
    Eigen::MatrixXd ok(3, 3);
    ok << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    Layer layer = Layer::from_adjacency(ok);
    CHECK(layer.degree(1) == 2);
    CHECK(layer.neighbors(1) == std::vector<int>{0, 2});

    Eigen::MatrixXd asym = ok;
    asym(0, 2) = 1;  // not mirrored
    CHECK_THROWS_AS(Layer::from_adjacency(asym), InvalidArgument);

    Eigen::MatrixXd weighted = ok;
    weighted(0, 1) = weighted(1, 0) = 0.5;
    CHECK_THROWS_AS(Layer::from_adjacency(weighted), InvalidArgument);

    Eigen::MatrixXd loop = ok;
    loop(0, 0) = 1;
    CHECK_THROWS_AS(Layer::from_adjacency(loop), InvalidArgument);
}

TEST_CASE("knn_layer on a 1-d line") {
    Eigen::MatrixXd pts(3, 1);
    pts << 0, 1, 3;
    Layer layer = knn_layer(pts, 1);
    // 0 picks 1, 1 picks 0, 2 picks 1; the union is the path 0-1-2.
    Eigen::MatrixXd want(3, 3);
    want << 0, 1, 0, 1, 0, 1, 0, 1, 0;
    CHECK(layer.adjacency() == want);
}

TEST_CASE("knn_layer with k = M-1 is complete") {
    Eigen::MatrixXd pts = random_cloud(6, 2, 3);
    Layer layer = knn_layer(pts, 5);
    for (int i = 0; i < 6; ++i) CHECK(layer.degree(i) == 5);
}

TEST_CASE("knn_layer of two points is a single edge") {
    Eigen::MatrixXd pts(2, 1);
    pts << 0, 2;
    CHECK(knn_layer(pts, 1).adjacency()(0, 1) == 1.0);
}

TEST_CASE("knn_layer rejects k out of range") {
    Eigen::MatrixXd pts = random_cloud(4, 2, 1);
    CHECK_THROWS_AS(knn_layer(pts, 4), InvalidArgument);
    CHECK_THROWS_AS(knn_layer(pts, 0), InvalidArgument);
}

TEST_CASE("knn_layer breaks distance ties toward the lower index") {
    // Nodes 0 and 1 sit close together and pick each other; node 2 is
    // bit-exactly equidistant from both (mirror-image coordinates) and must
    // list 0. Edge {1,2} can then only come from the tie-break going wrong.
    Eigen::MatrixXd pts(3, 2);
    pts << -1, 0.1, -1, -0.1, 1, 0;
    Layer layer = knn_layer(pts, 1);
    CHECK(layer.adjacency()(0, 1) == 1.0);
    CHECK(layer.adjacency()(2, 0) == 1.0);
    CHECK(layer.adjacency()(2, 1) == 0.0);
}

TEST_CASE("knn_layer matches the brute-force reference on random clouds") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        Eigen::MatrixXd pts = random_cloud(30, 3, seed);
        for (int k : {1, 7, 20}) {
            Layer layer = knn_layer(pts, k);
            CHECK(layer.adjacency() == knn_reference(pts, k));
            CHECK(layer.adjacency() == layer.adjacency().transpose().eval());
            for (int i = 0; i < 30; ++i) CHECK(layer.degree(i) >= k);
        }
    }
}

TEST_CASE("MultilayerGraph requires matching layer sizes") {
    Eigen::MatrixXd a2 = Eigen::MatrixXd::Zero(2, 2);
    Eigen::MatrixXd a3 = Eigen::MatrixXd::Zero(3, 3);
    std::vector<Layer> layers;
    layers.push_back(Layer::from_adjacency(a2));
    layers.push_back(Layer::from_adjacency(a3));
    CHECK_THROWS_AS(MultilayerGraph(std::move(layers)), InvalidArgument);
    CHECK_THROWS_AS(MultilayerGraph(std::vector<Layer>{}), InvalidArgument);
}

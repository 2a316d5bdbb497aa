#include <vector>

#include "doctest.h"
#include "mlgl/optimizer.hpp"
#include "mlgl/rng.hpp"
#include "mlgl/spectral.hpp"

using namespace mlgl;

namespace {

MultilayerGraph complete_graph(int n) {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Ones(n, n);
    adj.diagonal().setZero();
    std::vector<Layer> layers{Layer::from_adjacency(adj)};
    return MultilayerGraph(std::move(layers));
}

// Two disjoint cliques of `half` nodes each as a single layer.
MultilayerGraph two_cliques(int half) {
    const int n = 2 * half;
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((i < half) == (j < half)) adj(i, j) = adj(j, i) = 1.0;
    std::vector<Layer> layers{Layer::from_adjacency(adj)};
    return MultilayerGraph(std::move(layers));
}

MultilayerGraph random_multilayer(int n, int s, std::uint64_t seed) {
    auto g = rng::make_rng(seed);
    std::vector<Layer> layers;
    for (int t = 0; t < s; ++t) {
        Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng::uniform01(g) < 0.4) adj(i, j) = adj(j, i) = 1.0;
        layers.push_back(Layer::from_adjacency(adj));
    }
    return MultilayerGraph(std::move(layers));
}

bool traces_identical(const SolveTrace& a, const SolveTrace& b) {
    if (a.reason != b.reason || a.records.size() != b.records.size()) return false;
    for (size_t t = 0; t < a.records.size(); ++t) {
        const TraceRecord &ra = a.records[t], &rb = b.records[t];
        if (ra.iter != rb.iter || ra.objective != rb.objective
            || ra.step != rb.step || ra.pg_norm != rb.pg_norm)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("project_nonnegative clips and is idempotent") {
    Eigen::Vector3d v(-1, 2, 0);
    CHECK(project_nonnegative(v) == Eigen::Vector3d(0, 2, 0));

    Eigen::Vector3d ok(0.5, 2, 0);
    CHECK(project_nonnegative(ok) == ok);

    auto g = rng::make_rng(5);
    Eigen::VectorXd r(20);
    for (int i = 0; i < 20; ++i) r[i] = rng::uniform(g, -2.0, 2.0);
    Eigen::VectorXd once = project_nonnegative(r);
    CHECK(project_nonnegative(once) == once);
}

TEST_CASE("initial weights follow the configured mode") {
    MultilayerGraph g = two_cliques(3);
    SolveConfig cfg;

    cfg.init_mode = InitMode::LayerMean;
    EdgeWeightVector lm = initial_weights(g, cfg);
    CHECK(lm(0, 1) == doctest::Approx(1.01));
    CHECK(lm(0, 3) == doctest::Approx(0.01));

    cfg.init_mode = InitMode::Uniform;
    EdgeWeightVector un = initial_weights(g, cfg);
    CHECK(un.weights == Eigen::VectorXd::Ones(edge_count(6)));

    cfg.init_mode = InitMode::Custom;
    cfg.custom_init = Eigen::VectorXd::Constant(edge_count(6), -1.0);
    EdgeWeightVector cu = initial_weights(g, cfg);
    CHECK(cu.weights == Eigen::VectorXd::Zero(edge_count(6)));

    cfg.custom_init = Eigen::VectorXd::Ones(3);  // wrong length
    CHECK_THROWS_AS(initial_weights(g, cfg), InvalidArgument);
}

TEST_CASE("solve config is validated") {
    SolveConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    SolveConfig bad = cfg;
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = cfg;
    bad.grad_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = cfg;
    bad.backtrack_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = cfg;
    bad.initial_step = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("complete graph with no regularizers is already stationary") {
    // Every node sees every other, so the layer-mean start is a uniform
    // vector and the data-term gradient vanishes by symmetry.
    MultilayerGraph g = complete_graph(5);
    HyperParams h;
    h.gamma1 = 0.0;
    h.gamma2 = 0.0;
    h.k_communities = 2;
    SolveConfig cfg;
    SolveResult res = solve(g, h, cfg);
    CHECK(res.trace.reason == StopReason::Converged);
    CHECK(res.trace.records.back().pg_norm <= 1e-5);
    const double w0 = res.weights(0, 1);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            CHECK(res.weights(i, j) == doctest::Approx(w0).epsilon(1e-6));
    // Stationary start implies the init comes back unchanged.
    CHECK(res.weights.weights == initial_weights(g, cfg).weights);
}

TEST_CASE("two cliques split into two spectral communities") {
    MultilayerGraph g = two_cliques(5);
    HyperParams h;
    h.gamma1 = 0.1;
    h.gamma2 = 10.0;
    h.k_communities = 2;
    SolveConfig cfg;
    SolveResult res = solve(g, h, cfg);
    Eigen::VectorXd lam = eigenvalues_of(laplacian_from_weights(res.weights));
    CHECK(lam[1] <= 1e-3);
    CHECK(lam[2] >= 0.1);
}

TEST_CASE("a single capped iteration returns the projected start") {
    MultilayerGraph g = random_multilayer(6, 2, 1);
    HyperParams h;
    h.k_communities = 2;
    SolveConfig cfg;
    cfg.max_iters = 1;
    cfg.grad_tol = 1e9;
    SolveResult res = solve(g, h, cfg);
    CHECK(res.weights.weights == initial_weights(g, cfg).weights);
    CHECK(res.trace.reason == StopReason::Converged);
}

TEST_CASE("iterates stay feasible and the objective never increases") {
    for (std::uint64_t seed : {1, 2, 3}) {
        MultilayerGraph g = random_multilayer(8, 2, seed);
        HyperParams h;
        h.gamma1 = 0.1;
        h.gamma2 = 1.0;
        h.k_communities = 3;
        SolveConfig cfg;
        cfg.max_iters = 150;
        SolveResult res = solve(g, h, cfg);
        CHECK(res.weights.weights.minCoeff() >= 0.0);
        for (size_t t = 1; t < res.trace.records.size(); ++t)
            CHECK(res.trace.records[t].objective
                  <= res.trace.records[t - 1].objective);
    }
}

TEST_CASE("identical inputs give bit-identical solves") {
    MultilayerGraph g = random_multilayer(8, 3, 17);
    HyperParams h;
    h.gamma1 = 0.05;
    h.gamma2 = 2.0;
    h.k_communities = 3;
    SolveConfig cfg;
    cfg.max_iters = 120;
    SolveResult a = solve(g, h, cfg, 9);
    SolveResult b = solve(g, h, cfg, 9);
    CHECK(a.weights.weights == b.weights.weights);
    CHECK(traces_identical(a.trace, b.trace));
}

TEST_CASE("stop reasons are printable") {
    CHECK(std::string(to_string(StopReason::Converged)) == "converged");
    CHECK(std::string(to_string(StopReason::MaxIters)) == "max_iters");
    CHECK(std::string(to_string(StopReason::Stalled)) == "stalled");
}

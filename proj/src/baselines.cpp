#include "mlgl/baselines.hpp"

namespace mlgl {

LaplacianMatrix arithmetic_mean(const MultilayerGraph& g) {
    const int n = g.n_nodes();
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    for (const Layer& layer : g.layers()) mean += layer.adjacency();
    mean /= static_cast<double>(g.n_layers());
    return laplacian_from_weights(EdgeWeightVector(n, upper_triangular(mean)));
}

const std::vector<std::string>& baseline_names() {
    static const std::vector<std::string> names = {
        "arithmetic-mean", "projection-mean", "geometric-mean"};
    return names;
}

LaplacianMatrix run_baseline(const std::string& name, const MultilayerGraph& g) {
    if (name == "arithmetic-mean") return arithmetic_mean(g);
    if (name == "projection-mean") {
        throw NotImplementedError("baseline 'projection-mean' is a reserved name "
                                  "without an implementation");
    }
    if (name == "geometric-mean") {
        throw NotImplementedError("baseline 'geometric-mean' is a reserved name "
                                  "without an implementation");
    }
    throw InvalidArgument("unknown baseline '" + name + "'");
}

}  // namespace mlgl

#include "mlgl/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mlgl/rng.hpp"

namespace mlgl {

void SyntheticSpec::validate() const {
    if (n_nodes < 2) throw InvalidArgument("synthetic graphs need at least 2 nodes");
    if (n_layers < 1) throw InvalidArgument("n_layers must be at least 1");
    if (n_clusters < 1 || n_clusters > n_nodes) {
        throw InvalidArgument("n_clusters must satisfy 1 <= K <= N");
    }
    if (knn_k < 1 || knn_k >= n_nodes) {
        throw InvalidArgument("knn_k must satisfy 1 <= k < N");
    }
    if (dim < 1) throw InvalidArgument("dim must be at least 1");
}

namespace {

// Random rotation: QR of a Gaussian matrix with the signs fixed so the draw
// is Haar-distributed rather than biased by the factorization.
Eigen::MatrixXd random_rotation(int dim, std::mt19937_64& g) {
    Eigen::MatrixXd z(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) z(i, j) = rng::normal01(g);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

}  // namespace

LabeledMultilayer generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const int n = spec.n_nodes;
    const int k = spec.n_clusters;
    const int d = spec.dim;
    auto g = rng::make_rng(spec.seed);

    // Near-equal blocks: the first n % k blocks get one extra node.
    std::vector<int> truth(n);
    {
        const int base = n / k, extra = n % k;
        int node = 0;
        for (int c = 0; c < k; ++c) {
            const int size = base + (c < extra ? 1 : 0);
            for (int t = 0; t < size; ++t) truth[node++] = c;
        }
    }

    std::vector<Layer> layers;
    layers.reserve(spec.n_layers);
    for (int s = 0; s < spec.n_layers; ++s) {
        const double theta = rng::uniform(g, 0.0, 2.0 * M_PI);

        // Block means drawn on a circle of radius 10, rotated by the layer
        // angle theta. Positions are redrawn per layer, so which blocks sit
        // close together changes from layer to layer: each layer reveals the
        // clusters only partially, and only the within-block edges persist
        // across all layers.
        Eigen::MatrixXd means = Eigen::MatrixXd::Zero(k, d);
        for (int c = 0; c < k; ++c) {
            const double angle = theta + rng::uniform(g, 0.0, 2.0 * M_PI);
            means(c, 0) = 10.0 * std::cos(angle);
            if (d >= 2) means(c, 1) = 10.0 * std::sin(angle);
        }

        // Per-block anisotropic covariance: axis scales in [0.5, 2] under a
        // random rotation. transforms[c] maps standard normals to the block.
        std::vector<Eigen::MatrixXd> transforms(k);
        for (int c = 0; c < k; ++c) {
            Eigen::VectorXd scales(d);
            for (int m = 0; m < d; ++m) {
                scales[m] = std::sqrt(rng::uniform(g, 0.5, 2.0));
            }
            transforms[c] = random_rotation(d, g) * scales.asDiagonal();
        }

        Eigen::MatrixXd points(n, d);
        Eigen::VectorXd z(d);
        for (int i = 0; i < n; ++i) {
            for (int m = 0; m < d; ++m) z[m] = rng::normal01(g);
            points.row(i) = means.row(truth[i]) + (transforms[truth[i]] * z).transpose();
        }
        layers.push_back(knn_layer(points, spec.knn_k));
    }

    std::ostringstream note;
    note << "synthetic(N=" << n << ",S=" << spec.n_layers << ",K=" << k
         << ",knn=" << spec.knn_k << ",dim=" << d << ",seed=" << spec.seed << ")";

    LabeledMultilayer out{MultilayerGraph(std::move(layers)),
                          ClusterLabels{std::move(truth)}, note.str()};
    return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg, int line) {
    throw ParseError(msg, line);
}

}  // namespace

LabeledMultilayer load_multilayer(std::istream& in, const std::string& name) {
    int n_nodes = -1;
    std::optional<std::vector<long long>> raw_labels;
    std::vector<Eigen::MatrixXd> adjacencies;
    int line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string directive;
        if (!(tokens >> directive)) continue;  // blank or comment-only line

        if (directive == "nodes") {
            if (n_nodes >= 0) parse_fail("duplicate 'nodes' line", line_no);
            if (!(tokens >> n_nodes) || n_nodes < 1) {
                parse_fail("'nodes' needs a positive integer", line_no);
            }
            std::string extra;
            if (tokens >> extra) parse_fail("trailing tokens after 'nodes'", line_no);
        } else if (directive == "labels") {
            if (n_nodes < 0) parse_fail("'labels' before 'nodes'", line_no);
            if (!adjacencies.empty()) {
                parse_fail("'labels' must come before the first 'layer'", line_no);
            }
            if (raw_labels) parse_fail("duplicate 'labels' line", line_no);
            std::vector<long long> values;
            long long v = 0;
            while (tokens >> v) {
                if (v < 0) parse_fail("labels must be nonnegative", line_no);
                values.push_back(v);
            }
            if (!tokens.eof()) parse_fail("labels must be integers", line_no);
            if (static_cast<int>(values.size()) != n_nodes) {
                parse_fail("expected " + std::to_string(n_nodes) + " labels, got " +
                           std::to_string(values.size()), line_no);
            }
            raw_labels = std::move(values);
        } else if (directive == "layer") {
            if (n_nodes < 0) parse_fail("'layer' before 'nodes'", line_no);
            std::string layer_name;
            tokens >> layer_name;  // optional, informational only
            adjacencies.emplace_back(Eigen::MatrixXd::Zero(n_nodes, n_nodes));
        } else if (directive == "edge") {
            if (adjacencies.empty()) parse_fail("'edge' outside any layer", line_no);
            int i = -1, j = -1;
            if (!(tokens >> i >> j)) parse_fail("'edge' needs two node indices", line_no);
            std::string extra;
            if (tokens >> extra) parse_fail("trailing tokens after 'edge'", line_no);
            if (i < 0 || j >= n_nodes) {
                parse_fail("edge endpoint out of range [0, " +
                           std::to_string(n_nodes - 1) + "]", line_no);
            }
            if (i >= j) parse_fail("edges are undirected and written i j with i < j", line_no);
            adjacencies.back()(i, j) = 1.0;
            adjacencies.back()(j, i) = 1.0;
        } else {
            parse_fail("unknown directive '" + directive + "'", line_no);
        }
    }

    if (n_nodes < 0) throw DataError("'" + name + "' has no 'nodes' line");
    if (adjacencies.empty()) throw DataError("'" + name + "' has no layers");

    std::vector<Layer> layers;
    layers.reserve(adjacencies.size());
    for (auto& a : adjacencies) layers.push_back(Layer::from_adjacency(std::move(a)));

    LabeledMultilayer out{MultilayerGraph(std::move(layers)), std::nullopt, name};
    if (raw_labels) {
        // Densify: distinct raw values map order-preservingly onto 0..K-1.
        std::map<long long, int> remap;
        for (long long v : *raw_labels) remap.emplace(v, 0);
        int next = 0;
        for (auto& [value, dense] : remap) dense = next++;
        std::vector<int> labels(raw_labels->size());
        for (std::size_t i = 0; i < raw_labels->size(); ++i) {
            labels[i] = remap.at((*raw_labels)[i]);
        }
        out.truth = ClusterLabels{std::move(labels)};
    }
    return out;
}

LabeledMultilayer load_multilayer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "' for reading");
    return load_multilayer(in, path);
}

std::string to_text(const LabeledMultilayer& data) {
    std::ostringstream out;
    out << "nodes " << data.graph.n_nodes() << "\n";
    if (data.truth) {
        out << "labels";
        for (int l : data.truth->labels) out << ' ' << l;
        out << "\n";
    }
    for (int s = 0; s < data.graph.n_layers(); ++s) {
        out << "layer " << s << "\n";
        const Eigen::MatrixXd& a = data.graph.layer(s).adjacency();
        for (int i = 0; i < data.graph.n_nodes(); ++i) {
            for (int j = i + 1; j < data.graph.n_nodes(); ++j) {
                if (a(i, j) != 0.0) out << "edge " << i << ' ' << j << "\n";
            }
        }
    }
    return out.str();
}

void save_multilayer(const LabeledMultilayer& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << to_text(data);
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace mlgl

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mlgl/clustering.hpp"
#include "mlgl/graph.hpp"

namespace mlgl {

/// Parameters of the synthetic Gaussian-mixture multilayer generator.
struct SyntheticSpec {
    int n_nodes = 50;
    int n_layers = 3;
    int n_clusters = 5;
    int knn_k = 20;
    int dim = 2;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A multilayer graph plus optional ground-truth labels and a short
/// human-readable note on where it came from.
struct LabeledMultilayer {
    MultilayerGraph graph;
    std::optional<ClusterLabels> truth;
    std::string provenance;
};

/// Seeded synthetic dataset. Nodes are split into near-equal blocks; per
/// layer, block means sit on a circle of radius 10 at a random per-layer
/// rotation, each block gets a random anisotropic Gaussian, points are drawn
/// node by node, and the layer is the OR-symmetrized kNN graph of the cloud.
LabeledMultilayer generate_synthetic(const SyntheticSpec& spec);

/// Line-oriented text format (see docs/FORMAT.md): `nodes N`, an optional
/// `labels ...` line, then one `layer <name>` header per layer followed by
/// `edge i j` lines with i < j. `#` starts a comment.
LabeledMultilayer load_multilayer(const std::string& path);
LabeledMultilayer load_multilayer(std::istream& in, const std::string& name);

/// Canonical text form: layers named by their zero-based index, edges sorted,
/// labels densified. save -> load -> save is byte-identical.
std::string to_text(const LabeledMultilayer& data);
void save_multilayer(const LabeledMultilayer& data, const std::string& path);

}  // namespace mlgl

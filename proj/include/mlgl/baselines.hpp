#pragma once

#include <string>
#include <vector>

#include "mlgl/graph.hpp"

namespace mlgl {

/// Laplacian of the entrywise average of the layer adjacencies.
LaplacianMatrix arithmetic_mean(const MultilayerGraph& g);

/// Names accepted by run_baseline. "projection-mean" and "geometric-mean"
/// are reserved identifiers for externally published aggregation methods and
/// currently raise NotImplementedError.
const std::vector<std::string>& baseline_names();

LaplacianMatrix run_baseline(const std::string& name, const MultilayerGraph& g);

}  // namespace mlgl

#pragma once

#include <Eigen/Dense>

#include "mlgl/graph.hpp"
#include "mlgl/spectral.hpp"

namespace mlgl {

/// Regularization strengths and the community count K.
struct HyperParams {
    double gamma1 = 0.1;     ///< weight of the effective-resistance term
    double gamma2 = 1.0;     ///< weight of the community term
    int k_communities = 2;   ///< K
    double eig_floor = 1e-8; ///< guard for 1/lambda near disconnection

    /// Throws InvalidArgument unless gamma1, gamma2 >= 0 and 1 <= K < n_nodes.
    void validate(int n_nodes) const;
};

/// Value and gradient of one objective term.
struct TermEval {
    double value = 0.0;
    Eigen::VectorXd gradient;
    bool floored = false;  ///< an eigenvalue hit the 1/lambda floor
};

struct TermValues {
    double contrastive = 0.0;
    double r_eff = 0.0;
    double r_com = 0.0;
};

/// Full objective evaluation at one point.
struct ObjectiveEval {
    double value = 0.0;
    Eigen::VectorXd gradient;
    TermValues terms;
    bool near_disconnection = false;
};

/// Contrastive data-fidelity term summed over layers: for every node i and
/// observed neighbor j, -w_ij plus the log-sum-exp of row i of the learned
/// weight matrix (diagonal excluded). Log-sum-exp uses max subtraction.
TermEval contrastive(const EdgeWeightVector& w, const MultilayerGraph& g);

/// Effective-resistance term sum_{n>K} 1/lambda_n. Eigenvalues below
/// eig_floor are floored (value and gradient) and flagged.
TermEval r_eff(const EdgeWeightVector& w, int k_communities,
               double eig_floor = 1e-8);

/// Community term sum_{n<=K} lambda_n^2; zero iff the graph has at least K
/// connected components.
TermEval r_com(const EdgeWeightVector& w, int k_communities);

/// contrastive + gamma1 * r_eff + gamma2 * r_com, sharing one
/// eigendecomposition between the two spectral terms.
ObjectiveEval objective(const EdgeWeightVector& w, const MultilayerGraph& g,
                        const HyperParams& h);

/// Value-only evaluation (no eigenvectors, no gradient); used by line search.
double objective_value(const EdgeWeightVector& w, const MultilayerGraph& g,
                       const HyperParams& h);

/// All three term values regardless of the gamma weights (diagnostics).
TermValues objective_terms(const EdgeWeightVector& w, const MultilayerGraph& g,
                           int k_communities, double eig_floor = 1e-8);

}  // namespace mlgl

#include "mlgl/objective.hpp"

#include <cmath>

namespace mlgl {

void HyperParams::validate(int n_nodes) const {
    if (gamma1 < 0.0 || gamma2 < 0.0 || !std::isfinite(gamma1) || !std::isfinite(gamma2)) {
        throw InvalidArgument("regularization weights must be finite and nonnegative");
    }
    if (k_communities < 1 || k_communities >= n_nodes) {
        throw InvalidArgument("community count K must satisfy 1 <= K < N, got K=" +
                              std::to_string(k_communities) + " N=" +
                              std::to_string(n_nodes));
    }
    if (eig_floor <= 0.0) {
        throw InvalidArgument("eig_floor must be positive");
    }
}

namespace {

// Row-wise log-sum-exp statistics of the symmetric weight matrix with the
// diagonal excluded: lse[i] = log sum_{k != i} exp(w_ik), computed with max
// subtraction.
struct RowSoftmax {
    Eigen::VectorXd row_max;
    Eigen::VectorXd denom;  // sum_{k != i} exp(w_ik - row_max[i])
    Eigen::VectorXd lse;
};

RowSoftmax row_softmax(const Eigen::MatrixXd& wmat) {
    const int n = static_cast<int>(wmat.rows());
    RowSoftmax rs;
    rs.row_max.resize(n);
    rs.denom.resize(n);
    rs.lse.resize(n);
    for (int i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (k != i && wmat(i, k) > m) m = wmat(i, k);
        }
        double denom = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k != i) denom += std::exp(wmat(i, k) - m);
        }
        rs.row_max[i] = m;
        rs.denom[i] = denom;
        rs.lse[i] = m + std::log(denom);
    }
    return rs;
}

// Per-layer adjacency counts and total neighborhood sizes.
struct LayerTotals {
    Eigen::MatrixXd edge_multiplicity;  // sum_s W^s
    Eigen::VectorXd total_degree;       // sum_s |N^s(i)|
};

LayerTotals layer_totals(const MultilayerGraph& g) {
    const int n = g.n_nodes();
    LayerTotals t;
    t.edge_multiplicity = Eigen::MatrixXd::Zero(n, n);
    for (const Layer& layer : g.layers()) {
        t.edge_multiplicity += layer.adjacency();
    }
    t.total_degree = t.edge_multiplicity.rowwise().sum();
    return t;
}

double contrastive_value_impl(const Eigen::MatrixXd& wmat, const LayerTotals& t,
                              const RowSoftmax& rs) {
    const int n = static_cast<int>(wmat.rows());
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
        if (t.total_degree[i] == 0.0) continue;
        value += -t.edge_multiplicity.row(i).dot(wmat.row(i)) +
                 t.total_degree[i] * rs.lse[i];
    }
    return value;
}

void check_dims(const EdgeWeightVector& w, const MultilayerGraph& g) {
    if (w.n_nodes != g.n_nodes()) {
        throw InvalidArgument("edge weights are over " + std::to_string(w.n_nodes) +
                              " nodes but the multilayer graph has " +
                              std::to_string(g.n_nodes()));
    }
}

// Per-eigenvalue term values and d(term)/d(lambda_n) coefficients.
struct SpectralCoeffs {
    double value_eff = 0.0;
    double value_com = 0.0;
    bool floored = false;
    Eigen::VectorXd coeff_eff;
    Eigen::VectorXd coeff_com;
};

SpectralCoeffs spectral_coeffs(const Eigen::VectorXd& lambda, int k, double floor) {
    const int n = static_cast<int>(lambda.size());
    SpectralCoeffs sc;
    sc.coeff_eff = Eigen::VectorXd::Zero(n);
    sc.coeff_com = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        if (i < k) {
            sc.value_com += lambda[i] * lambda[i];
            sc.coeff_com[i] = 2.0 * lambda[i];
        } else {
            // 1/lambda is guarded by the floor; the gradient uses the floored
            // eigenvalue as well so value and gradient stay consistent.
            const double lf = std::max(lambda[i], floor);
            if (lambda[i] < floor) sc.floored = true;
            sc.value_eff += 1.0 / lf;
            sc.coeff_eff[i] = -1.0 / (lf * lf);
        }
    }
    return sc;
}

// Maps per-eigenvalue coefficients c_n to an edge-weight gradient using
// d lambda_n / d w_{ij} = (u_{n,i} - u_{n,j})^2. With A = U diag(c) U^T the
// entry for edge {i,j} is A_ii + A_jj - 2 A_ij.
Eigen::VectorXd eigen_term_gradient(const EigenDecomposition& eig,
                                    const Eigen::VectorXd& coeffs) {
    const int n = eig.n();
    const Eigen::MatrixXd a =
        eig.eigenvectors * coeffs.asDiagonal() * eig.eigenvectors.transpose();
    Eigen::VectorXd grad(edge_count(n));
    int e = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j, ++e) {
            grad[e] = a(i, i) + a(j, j) - 2.0 * a(i, j);
        }
    }
    return grad;
}

}  // namespace

TermEval contrastive(const EdgeWeightVector& w, const MultilayerGraph& g) {
    check_dims(w, g);
    const int n = w.n_nodes;
    TermEval out;
    out.gradient = Eigen::VectorXd::Zero(edge_count(n));
    if (n < 2) return out;

    const Eigen::MatrixXd wmat = weight_matrix(w);
    const LayerTotals t = layer_totals(g);
    const RowSoftmax rs = row_softmax(wmat);
    out.value = contrastive_value_impl(wmat, t, rs);

    int e = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b, ++e) {
            const double p_ab = std::exp(wmat(a, b) - rs.row_max[a]) / rs.denom[a];
            const double p_ba = std::exp(wmat(b, a) - rs.row_max[b]) / rs.denom[b];
            out.gradient[e] = -2.0 * t.edge_multiplicity(a, b) +
                              t.total_degree[a] * p_ab + t.total_degree[b] * p_ba;
        }
    }
    return out;
}

TermEval r_eff(const EdgeWeightVector& w, int k_communities, double eig_floor) {
    if (k_communities < 1 || k_communities >= w.n_nodes) {
        throw InvalidArgument("r_eff requires 1 <= K < N");
    }
    const EigenDecomposition eig = eigendecompose(laplacian_from_weights(w));
    const SpectralCoeffs sc = spectral_coeffs(eig.eigenvalues, k_communities, eig_floor);
    return TermEval{sc.value_eff, eigen_term_gradient(eig, sc.coeff_eff), sc.floored};
}

TermEval r_com(const EdgeWeightVector& w, int k_communities) {
    if (k_communities < 1 || k_communities >= w.n_nodes) {
        throw InvalidArgument("r_com requires 1 <= K < N");
    }
    const EigenDecomposition eig = eigendecompose(laplacian_from_weights(w));
    const SpectralCoeffs sc = spectral_coeffs(eig.eigenvalues, k_communities, 1e-8);
    return TermEval{sc.value_com, eigen_term_gradient(eig, sc.coeff_com), false};
}

ObjectiveEval objective(const EdgeWeightVector& w, const MultilayerGraph& g,
                        const HyperParams& h) {
    check_dims(w, g);
    h.validate(w.n_nodes);

    TermEval c = contrastive(w, g);
    const EigenDecomposition eig = eigendecompose(laplacian_from_weights(w));
    const SpectralCoeffs sc = spectral_coeffs(eig.eigenvalues, h.k_communities, h.eig_floor);

    ObjectiveEval out;
    out.terms = TermValues{c.value, sc.value_eff, sc.value_com};
    out.value = c.value + h.gamma1 * sc.value_eff + h.gamma2 * sc.value_com;
    out.near_disconnection = sc.floored;
    if (h.gamma1 == 0.0 && h.gamma2 == 0.0) {
        out.gradient = std::move(c.gradient);
    } else {
        const Eigen::VectorXd coeffs =
            h.gamma1 * sc.coeff_eff + h.gamma2 * sc.coeff_com;
        out.gradient = c.gradient + eigen_term_gradient(eig, coeffs);
    }
    return out;
}

double objective_value(const EdgeWeightVector& w, const MultilayerGraph& g,
                       const HyperParams& h) {
    check_dims(w, g);
    h.validate(w.n_nodes);

    double value = 0.0;
    if (w.n_nodes >= 2) {
        const Eigen::MatrixXd wmat = weight_matrix(w);
        value = contrastive_value_impl(wmat, layer_totals(g), row_softmax(wmat));
    }
    const Eigen::VectorXd lambda = eigenvalues_of(laplacian_from_weights(w));
    const SpectralCoeffs sc = spectral_coeffs(lambda, h.k_communities, h.eig_floor);
    return value + h.gamma1 * sc.value_eff + h.gamma2 * sc.value_com;
}

TermValues objective_terms(const EdgeWeightVector& w, const MultilayerGraph& g,
                           int k_communities, double eig_floor) {
    check_dims(w, g);
    TermValues t;
    if (w.n_nodes >= 2) {
        const Eigen::MatrixXd wmat = weight_matrix(w);
        t.contrastive = contrastive_value_impl(wmat, layer_totals(g), row_softmax(wmat));
    }
    const Eigen::VectorXd lambda = eigenvalues_of(laplacian_from_weights(w));
    const SpectralCoeffs sc = spectral_coeffs(lambda, k_communities, eig_floor);
    t.r_eff = sc.value_eff;
    t.r_com = sc.value_com;
    return t;
}

}  // namespace mlgl

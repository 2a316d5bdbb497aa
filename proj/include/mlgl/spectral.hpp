#pragma once

#include <Eigen/Dense>

#include "mlgl/graph.hpp"

namespace mlgl {

/// Absolute threshold below which an eigenvalue counts as zero.
constexpr double kEigenZeroTol = 1e-10;

/// Eigenpairs of a symmetric matrix, eigenvalues ascending, eigenvectors
/// orthonormal in the columns of `eigenvectors` (column n pairs with
/// eigenvalues[n]).
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    int n() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense symmetric eigendecomposition. Negative round-off eigenvalues with
/// |lambda| <= zero_tol are clamped to zero.
EigenDecomposition eigendecompose(const LaplacianMatrix& L,
                                  double zero_tol = kEigenZeroTol);

/// Ascending eigenvalues only (cheaper than a full decomposition); same
/// clamping as eigendecompose.
Eigen::VectorXd eigenvalues_of(const LaplacianMatrix& L,
                               double zero_tol = kEigenZeroTol);

/// Moore-Penrose pseudoinverse of a connected graph's Laplacian, computed
/// spectrally as U diag(0, 1/lambda_2, ..., 1/lambda_N) U^T.
/// Throws SingularGraphError when lambda_2 <= zero_tol.
Eigen::MatrixXd pseudoinverse(const LaplacianMatrix& L,
                              double zero_tol = kEigenZeroTol);

/// Effective resistance between nodes i and j of a connected graph.
double effective_resistance(const LaplacianMatrix& L, int i, int j,
                            double zero_tol = kEigenZeroTol);

/// Total effective resistance; equals the sum of all pairwise resistances
/// and N * sum_{n>=2} 1/lambda_n.
double total_effective_resistance(const LaplacianMatrix& L,
                                  double zero_tol = kEigenZeroTol);

}  // namespace mlgl

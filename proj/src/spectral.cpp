#include "mlgl/spectral.hpp"

#include <cmath>
#include <string>

namespace mlgl {

namespace {

void clamp_zeros(Eigen::VectorXd& values, double zero_tol) {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0 && values[i] >= -zero_tol) values[i] = 0.0;
    }
}

std::string condition_summary(const Eigen::MatrixXd& m) {
    return "n=" + std::to_string(m.rows()) +
           " max|entry|=" + std::to_string(m.cwiseAbs().maxCoeff()) +
           " max diag=" + std::to_string(m.diagonal().maxCoeff());
}

}  // namespace

EigenDecomposition eigendecompose(const LaplacianMatrix& L, double zero_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericError("symmetric eigensolver did not converge (" +
                           condition_summary(L.matrix()) + ")");
    }
    EigenDecomposition eig{solver.eigenvalues(), solver.eigenvectors()};
    clamp_zeros(eig.eigenvalues, zero_tol);
    return eig;
}

Eigen::VectorXd eigenvalues_of(const LaplacianMatrix& L, double zero_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.matrix(),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("symmetric eigensolver did not converge (" +
                           condition_summary(L.matrix()) + ")");
    }
    Eigen::VectorXd lambda = solver.eigenvalues();
    clamp_zeros(lambda, zero_tol);
    return lambda;
}

Eigen::MatrixXd pseudoinverse(const LaplacianMatrix& L, double zero_tol) {
    const EigenDecomposition eig = eigendecompose(L, zero_tol);
    if (L.n_nodes() >= 2 && eig.eigenvalues[1] <= zero_tol) {
        throw SingularGraphError(
            "cannot invert the Laplacian of a disconnected graph: lambda2=" +
                std::to_string(eig.eigenvalues[1]),
            eig.eigenvalues[1]);
    }
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(eig.n());
    for (int n = 0; n < eig.n(); ++n) {
        if (eig.eigenvalues[n] > zero_tol) inv[n] = 1.0 / eig.eigenvalues[n];
    }
    return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose();
}

double effective_resistance(const LaplacianMatrix& L, int i, int j,
                            double zero_tol) {
    const int n = L.n_nodes();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
        throw InvalidArgument("effective_resistance needs two distinct nodes in range");
    }
    const EigenDecomposition eig = eigendecompose(L, zero_tol);
    if (n >= 2 && eig.eigenvalues[1] <= zero_tol) {
        throw InfiniteResistanceError(
            "resistance between " + std::to_string(i) + " and " + std::to_string(j) +
                " may be infinite: lambda2=" + std::to_string(eig.eigenvalues[1]),
            eig.eigenvalues[1]);
    }
    // (delta_i - delta_j)^T Ldag (delta_i - delta_j) without forming Ldag.
    double r = 0.0;
    for (int k = 0; k < n; ++k) {
        if (eig.eigenvalues[k] <= zero_tol) continue;
        const double d = eig.eigenvectors(i, k) - eig.eigenvectors(j, k);
        r += d * d / eig.eigenvalues[k];
    }
    return r;
}

double total_effective_resistance(const LaplacianMatrix& L, double zero_tol) {
    const Eigen::VectorXd lambda = eigenvalues_of(L, zero_tol);
    if (L.n_nodes() >= 2 && lambda[1] <= zero_tol) {
        throw InfiniteResistanceError(
            "total effective resistance of a disconnected graph is infinite: lambda2=" +
                std::to_string(lambda[1]),
            lambda[1]);
    }
    double sum = 0.0;
    for (Eigen::Index k = 1; k < lambda.size(); ++k) {
        sum += 1.0 / lambda[k];
    }
    return static_cast<double>(L.n_nodes()) * sum;
}

}  // namespace mlgl

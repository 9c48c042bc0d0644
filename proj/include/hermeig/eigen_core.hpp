#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hermeig/errors.hpp"

namespace hermeig {

struct SymTriMatrix {
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag;  // length n-1

    int size() const { return static_cast<int>(diag.size()); }
};

struct DenseSymPair {
    Eigen::MatrixXd K;  // symmetric stiffness
    Eigen::MatrixXd M;  // symmetric positive definite mass
};

struct EigenResult {
    std::vector<double> values;            // ascending
    Eigen::MatrixXd vectors;               // column i pairs with values[i]; may be empty
    std::vector<double> residuals;         // ||K v - lambda M v|| / ||M v|| per pair
};

// Number of eigenvalues of T strictly below the shift (Sturm sequence count).
int sturm_count_below(const SymTriMatrix& T, double shift);

// k smallest eigenvalues of a symmetric tridiagonal matrix. Each eigenvalue
// is located by bisection on the Sturm count to an interval of absolute
// width <= 1e-12 * max(1, ||T||_inf); eigenvectors by inverse iteration.
EigenResult eigs_sym_tridiagonal(const SymTriMatrix& T, int k, bool want_vectors = true);

// k smallest eigenvalues of K v = lambda M v, M positive definite, via
// Cholesky reduction to a standard symmetric problem. Dense only; size
// capped (default 4000). Residuals are reported and certified against
// a backward-error threshold.
EigenResult eigs_generalized_sym(const DenseSymPair& pair, int k, int dense_cap = 4000,
                                 double residual_tol = 1e-9, bool want_vectors = true);

}  // namespace hermeig

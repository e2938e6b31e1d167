#pragma once

#include <vector>

#include "attrcluster/correlation.hpp"
#include "attrcluster/matrix.hpp"

namespace attrcluster {

/// Eigenvalues sorted non-increasingly with matching orthonormal eigenvector
/// columns. Eigenvalues below 1e-12 are clamped to 0; each eigenvector is
/// signed so that its largest-magnitude entry is positive (lowest index wins
/// on ties).
struct EigenDecomposition {
    std::vector<double> lambda;
    Matrix U;  // column j is the unit eigenvector for lambda[j]
};

/// Cyclic Jacobi eigendecomposition of a symmetric unit-diagonal matrix
/// (a correlation matrix). Sweeps rotate every off-diagonal plane in
/// lexicographic order until the off-diagonal Frobenius norm drops below
/// 1e-12 * n, with a budget of 100 sweeps. Fully deterministic: identical
/// input bits give identical output bits.
///
/// Throws NumericError when the input is not symmetric/unit-diagonal, when an
/// eigenvalue is negative beyond round-off (the matrix was not a valid
/// correlation matrix), or on non-convergence (reporting the residual).
EigenDecomposition eigh_symmetric(const Matrix& R);

inline EigenDecomposition eigh_symmetric(const CorrelationMatrix& R) {
    return eigh_symmetric(R.R);
}

}  // namespace attrcluster

#pragma once

// Real symmetric tridiagonal eigenproblems: the closed form for uniform
// chains and an implicit QL iteration for the general case.

#include <Eigen/Dense>

#include <span>

namespace rotorchain {

/// Ascending eigenvalues; column k of `vectors` is the normalized eigenvector
/// of values(k), with a positive first component.
struct TridiagonalEigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Constant diagonal `a`, constant off-diagonal `t`:
/// lambda_k = a + 2 t cos(k pi / (n+1)), v_k(p) = sqrt(2/(n+1)) sin(p k pi / (n+1)).
TridiagonalEigensystem solve_uniform_tridiagonal(double a, double t, int n);

/// Implicit QL with Wilkinson-type shifts. `off` has size diag.size() - 1.
TridiagonalEigensystem solve_symmetric_tridiagonal(std::span<const double> diag,
                                                   std::span<const double> off);

} // namespace rotorchain

#pragma once

#include <Eigen/Core>
#include <utility>

namespace wavebem {

// LU solve with a residual check; throws SingularMatrixError when the
// residual is far above roundoff.
Eigen::VectorXd solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// Spectral condition number sigma_max / sigma_min.
double condition_number_2(const Eigen::MatrixXd& A);

// Smallest eigenvalue of the pencil (sym(A), M) with M symmetric positive
// definite; A is symmetrized first.
double min_symmetric_rayleigh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M);

// Both extreme eigenvalues of the pencil (sym(A), M) as {min, max}.
std::pair<double, double> symmetric_rayleigh_range(const Eigen::MatrixXd& A,
                                                   const Eigen::MatrixXd& M);

// sqrt of the smallest eigenvalue of (B^T My^{-1} B, Mx): the discrete
// inf-sup constant of B between the norms induced by Mx (trial) and My (test).
double infsup_constant(const Eigen::MatrixXd& B, const Eigen::MatrixXd& Mx,
                       const Eigen::MatrixXd& My);

}  // namespace wavebem

#include "wavebem/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "wavebem/errors.hpp"

namespace wavebem {

Eigen::VectorXd solve_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("solve_dense: dimension mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd x = lu.solve(b);
  const double residual = (A * x - b).norm();
  if (!(residual <= 1e-10 * std::max(1.0, b.norm())))
    throw SingularMatrixError("solve_dense: residual indicates a singular system");
  return x;
}

double condition_number_2(const Eigen::MatrixXd& A) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0)
    throw SingularMatrixError("condition_number_2: smallest singular value is zero");
  return sv(0) / sv(sv.size() - 1);
}

double min_symmetric_rayleigh(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M) {
  return symmetric_rayleigh_range(A, M).first;
}

std::pair<double, double> symmetric_rayleigh_range(const Eigen::MatrixXd& A,
                                                   const Eigen::MatrixXd& M) {
  const Eigen::MatrixXd S = 0.5 * (A + A.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, M,
                                                               Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SingularMatrixError("symmetric_rayleigh_range: eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

double infsup_constant(const Eigen::MatrixXd& B, const Eigen::MatrixXd& Mx,
                       const Eigen::MatrixXd& My) {
  if (B.rows() != B.cols() || Mx.rows() != B.rows() || My.rows() != B.rows())
    throw std::invalid_argument("infsup_constant: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt_y(My), llt_x(Mx);
  if (llt_y.info() != Eigen::Success || llt_x.info() != Eigen::Success)
    throw std::invalid_argument("infsup_constant: gram matrices must be positive definite");
  const Eigen::MatrixXd C = B.transpose() * llt_y.solve(B);
  const double lam = min_symmetric_rayleigh(C, Mx);
  return std::sqrt(std::max(lam, 0.0));
}

}  // namespace wavebem

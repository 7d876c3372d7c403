#include "brlkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "brlkit/errors.hpp"

namespace brlkit {

double operator_norm(const Matrix& X) {
  if (X.size() == 0) return 0.0;
  // sigma_max via the smaller Gram matrix; no cancellation affects the top
  // eigenvalue, so this is as accurate as a full SVD and much faster.
  Matrix gram = X.rows() <= X.cols() ? Matrix(X * X.adjoint()) : Matrix(X.adjoint() * X);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(gram), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_radius(const Matrix& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix hermitize(const Matrix& X) { return 0.5 * (X + X.adjoint()); }

double hermitian_min_eig(const Matrix& H) {
  if (H.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double condition_number(const Matrix& X) {
  if (X.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(X);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

Index numerical_rank(const Matrix& X, double rel_cutoff) {
  if (X.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(X);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) return 0;
  const double cut = rel_cutoff * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

Matrix pseudo_inverse(const Matrix& X, double rel_cutoff) {
  if (X.size() == 0) return Matrix(X.cols(), X.rows());
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  if (sv(0) > 0.0) {
    const double cut = rel_cutoff * sv(0);
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Matrix orthonormal_range_basis(const Matrix& X, double rel_cutoff) {
  if (X.size() == 0) return Matrix(X.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU);
  const Index rank = numerical_rank(X, rel_cutoff);
  return svd.matrixU().leftCols(rank);
}

std::pair<Matrix, Matrix> hermitian_sqrt_pair(const Matrix& H) {
  if (H.rows() != H.cols()) raise(ErrorCode::DimensionMismatch, "square matrix expected");
  if (H.rows() == 0) return {Matrix(0, 0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H));
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0)
    raise(ErrorCode::NotPositiveDefinite,
          "smallest eigenvalue " + std::to_string(ev.minCoeff()) + " is not positive");
  const Eigen::VectorXd root = ev.cwiseSqrt();
  const Matrix& V = es.eigenvectors();
  Matrix sqrtm = V * root.asDiagonal() * V.adjoint();
  Matrix inv_sqrtm = V * root.cwiseInverse().asDiagonal() * V.adjoint();
  return {std::move(sqrtm), std::move(inv_sqrtm)};
}

Matrix hermitian_sqrt(const Matrix& H) { return hermitian_sqrt_pair(H).first; }

Matrix solve_stein(const Matrix& A, const Matrix& Q, double update_tol, double stability_margin) {
  if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
    raise(ErrorCode::DimensionMismatch, "Stein equation needs square A and Q of equal size");
  if (A.rows() == 0) return Matrix(0, 0);
  const double rho = spectral_radius(A);
  if (rho >= 1.0 - stability_margin)
    raise(ErrorCode::UnstableSystem, "spectral radius " + std::to_string(rho) + " >= 1");
  Matrix P = hermitize(Q);
  Matrix S = A;
  for (int k = 0; k < 64; ++k) {
    Matrix update = S * P * S.adjoint();
    P = hermitize(P + update);
    if (update.norm() <= update_tol * std::max(1.0, P.norm())) return P;
    S = S * S;
  }
  raise(ErrorCode::NoConvergence, "Stein doubling did not converge");
}

bool all_finite(const Matrix& X) {
  for (Index j = 0; j < X.cols(); ++j)
    for (Index i = 0; i < X.rows(); ++i)
      if (!std::isfinite(X(i, j).real()) || !std::isfinite(X(i, j).imag())) return false;
  return true;
}

}  // namespace brlkit

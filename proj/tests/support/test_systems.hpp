#pragma once

#include <random>
#include <utility>

#include <Eigen/LU>
#include <Eigen/QR>

#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"
#include "brlkit/system.hpp"

namespace brlkit::testing {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = Complex(gauss(rng), gauss(rng));
  return out;
}

inline Vector random_vector(Rng& rng, Index size) {
  return Vector(random_matrix(rng, size, 1));
}

/// Random A scaled to the requested spectral radius; B, C, D of unit scale.
inline SystemRealization random_stable(Rng& rng, Index n, Index m, Index p, double rho = 0.8) {
  Matrix A = random_matrix(rng, n, n);
  const double r = spectral_radius(A);
  if (r > 0.0) A *= rho / r;
  return SystemRealization::make(std::move(A), random_matrix(rng, n, m) / std::sqrt(double(n + m)),
                                 random_matrix(rng, p, n) / std::sqrt(double(n + p)),
                                 random_matrix(rng, p, m) / std::sqrt(double(m + p)) * 0.3);
}

/// Random block matrix scaled so sigma_max(M) equals the target, split into a
/// realization.
inline SystemRealization random_contractive(Rng& rng, Index n, Index m, Index p,
                                            double sigma = 1.0) {
  Matrix M = random_matrix(rng, n + p, n + m);
  const double s = operator_norm(M);
  if (s > 0.0) M *= sigma / s;
  return SystemRealization::make(M.topLeftCorner(n, n), M.topRightCorner(n, m),
                                 M.bottomLeftCorner(p, n), M.bottomRightCorner(p, m));
}

/// Retries until classify_minimality accepts the draw (failures are rare for
/// dense Gaussian data).
inline SystemRealization random_minimal_stable(Rng& rng, Index n, Index m, Index p,
                                               double rho = 0.8) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SystemRealization sys = random_stable(rng, n, m, p, rho);
    if (classify_minimality(sys).minimal) return sys;
  }
  throw std::runtime_error("no minimal draw in 64 attempts");
}

/// Random invertible T = U diag(sigma) V* with condition number <= cond.
inline Matrix random_well_conditioned(Rng& rng, Index n, double cond) {
  Eigen::HouseholderQR<Matrix> qu(random_matrix(rng, n, n));
  Eigen::HouseholderQR<Matrix> qv(random_matrix(rng, n, n));
  Matrix U = qu.householderQ();
  Matrix V = qv.householderQ();
  std::uniform_real_distribution<double> unif(1.0 / cond, 1.0);
  Eigen::VectorXd sigma(n);
  for (Index i = 0; i < n; ++i) sigma(i) = unif(rng);
  if (n > 1) {
    sigma(0) = 1.0;
    sigma(n - 1) = 1.0 / cond;
  }
  return U * sigma.asDiagonal() * V.adjoint();
}

/// Truncated-series oracle for the transfer function, independent of the
/// resolvent-solve path.
inline Matrix series_transfer_oracle(const SystemRealization& sys, Complex z, int terms) {
  Matrix sum = sys.D;
  Matrix K = sys.B;
  Complex zn = z;
  for (int k = 1; k < terms; ++k) {
    sum += zn * (sys.C * K);
    K = sys.A * K;
    zn *= z;
  }
  return sum;
}

/// Minimal positive fixed point of the scalar-state Riccati map, located by
/// grid search for a sign change of r(h) = step(h) - h followed by bisection.
/// Works for any input/output dimensions as long as n_state = 1.
inline double scalar_riccati_oracle(const SystemRealization& sys) {
  if (sys.n_state != 1) throw std::runtime_error("oracle needs a scalar state");
  auto residual = [&](double h) {
    Matrix H(1, 1);
    H(0, 0) = h;
    const Matrix mid = Matrix::Identity(sys.n_in, sys.n_in) - sys.B.adjoint() * H * sys.B -
                       sys.D.adjoint() * sys.D;
    const Matrix cross = sys.A.adjoint() * H * sys.B + sys.C.adjoint() * sys.D;
    const Matrix step = sys.A.adjoint() * H * sys.A + sys.C.adjoint() * sys.C +
                        cross * mid.inverse() * cross.adjoint();
    return step(0, 0).real() - h;
  };
  // Find the singularity of the middle term to bound the search.
  double h_cap = 1e6;
  {
    Matrix H(1, 1);
    for (double h = 0.0; h < 1e6; h += 1e-3) {
      H(0, 0) = h;
      const Matrix mid = Matrix::Identity(sys.n_in, sys.n_in) - sys.B.adjoint() * H * sys.B -
                         sys.D.adjoint() * sys.D;
      if (hermitian_min_eig(mid) <= 1e-9) {
        h_cap = h - 1e-3;
        break;
      }
    }
  }
  double lo = 0.0, hi = -1.0;
  const int grid = 200000;
  for (int i = 1; i <= grid; ++i) {
    const double h = h_cap * i / grid;
    if (residual(h) < 0.0) {
      hi = h;
      break;
    }
    lo = h;
  }
  if (hi < 0.0) {
    if (std::abs(residual(0.0)) < 1e-12) return 0.0;
    throw std::runtime_error("oracle found no sign change");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline SystemRealization scalar_system(double a, double b, double c, double d) {
  Matrix A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << a;
  B << b;
  C << c;
  D << d;
  return SystemRealization::make(A, B, C, D);
}

}  // namespace brlkit::testing

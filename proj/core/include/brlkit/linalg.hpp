#pragma once

#include <utility>

#include "brlkit/config.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

/// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& X);

/// Largest eigenvalue modulus; 0 for empty matrices.
double spectral_radius(const Matrix& A);

/// (X + X*) / 2.
Matrix hermitize(const Matrix& X);

/// Smallest eigenvalue of the Hermitian part; +inf for empty matrices.
double hermitian_min_eig(const Matrix& H);

/// sigma_max / sigma_min; +inf when singular, 1 for empty matrices.
double condition_number(const Matrix& X);

/// Number of singular values above rel_cutoff * sigma_max.
Index numerical_rank(const Matrix& X, double rel_cutoff = kTol.rank_cutoff);

/// Moore-Penrose pseudo-inverse, singular values below rel_cutoff * sigma_max
/// treated as zero.
Matrix pseudo_inverse(const Matrix& X, double rel_cutoff = kTol.rank_cutoff);

/// Orthonormal columns spanning the numerical range of X.
Matrix orthonormal_range_basis(const Matrix& X, double rel_cutoff = kTol.rank_cutoff);

/// {H^{1/2}, H^{-1/2}} from one eigendecomposition. Throws NotPositiveDefinite
/// when the smallest eigenvalue is not strictly positive.
std::pair<Matrix, Matrix> hermitian_sqrt_pair(const Matrix& H);
Matrix hermitian_sqrt(const Matrix& H);

/// Unique solution of P = A P A* + Q for spec(A) < 1, by squaring-accumulation
/// doubling. Throws UnstableSystem when spec(A) >= 1 - stability_margin.
Matrix solve_stein(const Matrix& A, const Matrix& Q, double update_tol = kTol.stein_update,
                   double stability_margin = kTol.stability_margin);

bool all_finite(const Matrix& X);

}  // namespace brlkit

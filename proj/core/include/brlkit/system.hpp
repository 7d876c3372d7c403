#pragma once

#include <vector>

#include "brlkit/config.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

/**
 * Discrete-time realization x(n+1) = A x(n) + B u(n), y(n) = C x(n) + D u(n)
 * over complex scalars. The block system matrix M = [[A, B], [C, D]] maps
 * state (+) input to state (+) output. Values are immutable after
 * construction; every operation below is a pure function of its inputs.
 */
struct SystemRealization {
  Index n_state = 0;
  Index n_in = 0;
  Index n_out = 0;
  Matrix A, B, C, D;

  /// Builds a realization from the four matrices, deriving the dimensions and
  /// rejecting inconsistent shapes or non-finite entries.
  static SystemRealization make(Matrix A, Matrix B, Matrix C, Matrix D);

  /// M = [[A, B], [C, D]], shape (n_state + n_out) x (n_state + n_in).
  Matrix system_matrix() const;
};

/// Throws DimensionMismatch / NonFiniteEntry when the invariants fail.
void validate(const SystemRealization& sys);

struct TransferSample {
  Complex z;
  Matrix value;            ///< F(z) = D + z C (I - zA)^{-1} B
  double condition = 1.0;  ///< condition estimate of I - zA
};

struct Trajectory {
  std::vector<Vector> inputs;
  std::vector<Vector> states;  ///< one more entry than inputs
  std::vector<Vector> outputs;
};

struct ContractionReport {
  bool is_contraction = false;
  double sigma_max = 0.0;
};

/// One LU solve against B; never forms the resolvent inverse explicitly.
/// Throws SingularResolvent when the condition estimate exceeds the cap.
TransferSample eval_transfer(const SystemRealization& sys, Complex z,
                             double condition_cap = kTol.condition_cap);

/// [F_0, ..., F_{count-1}] with F_0 = D, F_n = C A^{n-1} B, built by iterated
/// multiplication.
std::vector<Matrix> markov_coefficients(const SystemRealization& sys, int count);

/// (A*, C*, B*, D*) with input/output roles swapped. Involutive bit-for-bit.
SystemRealization adjoint_system(const SystemRealization& sys);

/// (T A T^{-1}, T B, C T^{-1}, D). Throws SingularTransform when T is
/// numerically singular or its condition number exceeds the cap.
SystemRealization transform_system(const SystemRealization& sys, const Matrix& T,
                                   double condition_cap = kTol.condition_cap);

/// (A, gamma B, C, gamma D); scales the transfer function by gamma.
SystemRealization scale_io(const SystemRealization& sys, double gamma);

/// Runs the recursion from x0 over the given inputs.
Trajectory simulate(const SystemRealization& sys, const Vector& x0,
                    const std::vector<Vector>& inputs);

/// sigma_max(M) and the verdict sigma_max <= 1 + tol.
ContractionReport contraction_check(const Matrix& M, double tol = 0.0);

}  // namespace brlkit

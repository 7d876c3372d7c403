#pragma once

#include <optional>
#include <utility>

#include "brlkit/config.hpp"
#include "brlkit/system.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

/**
 * Horizon-N windows of the controllability operator, the observability
 * operator and the Hankel operator of a realization.
 *
 * Block conventions (the finite stand-in for the doubly infinite index sets):
 *   Wc     = [A^{N-1}B, ..., AB, B]            n_state x (N n_in)
 *   Wo     = col(C, CA, ..., CA^{N-1})         (N n_out) x n_state
 *   hankel = [C A^{i+j} B]_{0 <= i,j < N}      (N n_out) x (N n_in)
 * so that hankel = Wo * controllability_ascending() where the ascending
 * variant lists the blocks as [B, AB, ..., A^{N-1}B].
 */
struct OperatorTruncation {
  int horizon = 0;
  Index n_state = 0;
  Index n_in = 0;
  Index n_out = 0;
  Matrix Wc;
  Matrix Wo;
  Matrix hankel;

  /// Column blocks of Wc reversed into [B, AB, ..., A^{N-1}B] order.
  Matrix controllability_ascending() const;
};

struct MinimalityReport {
  bool controllable = false;
  bool observable = false;
  bool minimal = false;
  Index reach_rank = 0;
  Index obs_rank = 0;
  /// (lambda_min of controllability Gramian, lambda_min of observability
  /// Gramian); absent when spec(A) >= 1 or n_state = 0.
  std::optional<std::pair<double, double>> gramian_min_eigs;
};

OperatorTruncation truncate_operators(const SystemRealization& sys, int horizon);

/// Solves P = A P A* + B B*; requires spec(A) < 1.
Matrix controllability_gramian(const SystemRealization& sys,
                               double update_tol = kTol.stein_update,
                               double stability_margin = kTol.stability_margin);

/// Solves Q = A* Q A + C* C; the controllability Gramian of the adjoint system.
Matrix observability_gramian(const SystemRealization& sys,
                             double update_tol = kTol.stein_update,
                             double stability_margin = kTol.stability_margin);

/// Numerical ranks of the horizon-n_state Krylov windows decide
/// controllability and observability; Cayley-Hamilton makes larger horizons
/// redundant.
MinimalityReport classify_minimality(const SystemRealization& sys, double tol = kTol.rank_cutoff);

/// Compresses onto the reachable subspace, then onto the observable subspace
/// of the compressed system; orthonormal bases keep conditioning controlled.
/// A zero-dimensional result is legal (then F = D identically).
SystemRealization kalman_minimal(const SystemRealization& sys, double tol = kTol.rank_cutoff);

/// N-truncation of the forward-shift example: A the lower shift on C^N,
/// B = e_1, C = 0, D = 0. Its ascending Wc block is the identity.
SystemRealization shift_probe(int n);

/// ||Wo at horizon N|| for the system A=[2], B=[1], C=[1]; grows like 2^{N-1},
/// the finite-truncation shadow of an empty adjoint-controllability domain.
double divergence_probe(int n);

}  // namespace brlkit

#include "brlkit/operators.hpp"

#include <string>
#include <utility>
#include <vector>

#include "brlkit/errors.hpp"
#include "brlkit/linalg.hpp"

namespace brlkit {

Matrix OperatorTruncation::controllability_ascending() const {
  Matrix out(Wc.rows(), Wc.cols());
  for (int j = 0; j < horizon; ++j)
    out.middleCols(j * n_in, n_in) = Wc.middleCols((horizon - 1 - j) * n_in, n_in);
  return out;
}

OperatorTruncation truncate_operators(const SystemRealization& sys, int horizon) {
  validate(sys);
  if (horizon < 1) raise(ErrorCode::DimensionMismatch, "horizon must be at least 1");
  const Index n = sys.n_state, m = sys.n_in, p = sys.n_out;
  const int N = horizon;
  OperatorTruncation t;
  t.horizon = N;
  t.n_state = n;
  t.n_in = m;
  t.n_out = p;
  t.Wc.resize(n, N * m);
  t.Wo.resize(N * p, n);
  t.hankel.resize(N * p, N * m);

  // Krylov blocks K_t = A^t B for t = 0 .. 2N-2, by iterated multiplication.
  std::vector<Matrix> K(static_cast<size_t>(2 * N - 1));
  K[0] = sys.B;
  for (int t = 1; t <= 2 * N - 2; ++t) K[t] = sys.A * K[t - 1];

  for (int j = 0; j < N; ++j) t.Wc.middleCols((N - 1 - j) * m, m) = K[j];

  Matrix L = sys.C;  // C A^i
  for (int i = 0; i < N; ++i) {
    t.Wo.middleRows(i * p, p) = L;
    if (i + 1 < N) L = L * sys.A;
  }

  // hankel block (i, j) = C K_{i+j}; tiling the same product keeps the
  // block-Hankel structure exact.
  std::vector<Matrix> H(K.size());
  for (size_t s = 0; s < K.size(); ++s) H[s] = sys.C * K[s];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) t.hankel.block(i * p, j * m, p, m) = H[static_cast<size_t>(i + j)];
  return t;
}

Matrix controllability_gramian(const SystemRealization& sys, double update_tol,
                               double stability_margin) {
  validate(sys);
  return solve_stein(sys.A, sys.B * sys.B.adjoint(), update_tol, stability_margin);
}

Matrix observability_gramian(const SystemRealization& sys, double update_tol,
                             double stability_margin) {
  return controllability_gramian(adjoint_system(sys), update_tol, stability_margin);
}

MinimalityReport classify_minimality(const SystemRealization& sys, double tol) {
  validate(sys);
  MinimalityReport report;
  if (sys.n_state == 0) {
    report.controllable = report.observable = report.minimal = true;
    return report;
  }
  OperatorTruncation t = truncate_operators(sys, static_cast<int>(sys.n_state));
  report.reach_rank = numerical_rank(t.Wc, tol);
  report.obs_rank = numerical_rank(t.Wo, tol);
  report.controllable = report.reach_rank == sys.n_state;
  report.observable = report.obs_rank == sys.n_state;
  report.minimal = report.controllable && report.observable;
  if (spectral_radius(sys.A) < 1.0 - kTol.stability_margin) {
    report.gramian_min_eigs = std::make_pair(hermitian_min_eig(controllability_gramian(sys)),
                                             hermitian_min_eig(observability_gramian(sys)));
  }
  return report;
}

SystemRealization kalman_minimal(const SystemRealization& sys, double tol) {
  validate(sys);
  if (sys.n_state == 0) return sys;

  // Reachable subspace first; its range is A-invariant at horizon n_state.
  OperatorTruncation t = truncate_operators(sys, static_cast<int>(sys.n_state));
  Matrix Ur = orthonormal_range_basis(t.Wc, tol);
  Matrix A1 = Ur.adjoint() * sys.A * Ur;
  Matrix B1 = Ur.adjoint() * sys.B;
  Matrix C1 = sys.C * Ur;

  if (A1.rows() == 0) return SystemRealization::make(A1, B1, C1, sys.D);

  SystemRealization reached = SystemRealization::make(A1, B1, C1, sys.D);
  OperatorTruncation to = truncate_operators(reached, static_cast<int>(reached.n_state));
  // Observable part: orthonormal basis of range(Wo*), i.e. right singular
  // vectors of Wo above the cutoff.
  Matrix Vo = orthonormal_range_basis(to.Wo.adjoint(), tol);
  Matrix A2 = Vo.adjoint() * A1 * Vo;
  Matrix B2 = Vo.adjoint() * B1;
  Matrix C2 = C1 * Vo;
  return SystemRealization::make(std::move(A2), std::move(B2), std::move(C2), sys.D);
}

SystemRealization shift_probe(int n) {
  if (n < 1) raise(ErrorCode::DimensionMismatch, "n must be at least 1");
  Matrix A = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) A(i + 1, i) = 1.0;
  Matrix B = Matrix::Zero(n, 1);
  B(0, 0) = 1.0;
  Matrix C = Matrix::Zero(1, n);
  Matrix D = Matrix::Zero(1, 1);
  return SystemRealization::make(std::move(A), std::move(B), std::move(C), std::move(D));
}

double divergence_probe(int n) {
  if (n < 1) raise(ErrorCode::DimensionMismatch, "n must be at least 1");
  Matrix A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << 2.0;
  B << 1.0;
  C << 1.0;
  D << 0.0;
  SystemRealization sys = SystemRealization::make(A, B, C, D);
  return operator_norm(truncate_operators(sys, n).Wo);
}

}  // namespace brlkit

#include "brlkit/system.hpp"

#include <limits>
#include <string>
#include <utility>

#include <Eigen/LU>

#include "brlkit/errors.hpp"
#include "brlkit/linalg.hpp"

namespace brlkit {

SystemRealization SystemRealization::make(Matrix A, Matrix B, Matrix C, Matrix D) {
  SystemRealization sys;
  sys.A = std::move(A);
  sys.B = std::move(B);
  sys.C = std::move(C);
  sys.D = std::move(D);
  sys.n_state = sys.A.rows();
  sys.n_in = sys.B.cols();
  sys.n_out = sys.C.rows();
  // 0-state / 0-input / 0-output systems carry shape information only in the
  // nonempty blocks; fall back to D for whatever is still undetermined.
  if (sys.n_state == 0 && sys.A.cols() == 0) {
    if (sys.B.rows() == 0 && sys.C.cols() == 0) {
      if (sys.n_in == 0) sys.n_in = sys.D.cols();
      if (sys.n_out == 0) sys.n_out = sys.D.rows();
    }
  }
  validate(sys);
  return sys;
}

Matrix SystemRealization::system_matrix() const {
  Matrix M(n_state + n_out, n_state + n_in);
  M.topLeftCorner(n_state, n_state) = A;
  M.topRightCorner(n_state, n_in) = B;
  M.bottomLeftCorner(n_out, n_state) = C;
  M.bottomRightCorner(n_out, n_in) = D;
  return M;
}

void validate(const SystemRealization& sys) {
  if (sys.n_state < 0 || sys.n_in < 0 || sys.n_out < 0)
    raise(ErrorCode::DimensionMismatch, "negative dimension");
  auto check = [](const Matrix& X, Index rows, Index cols, const char* name) {
    if (X.rows() != rows || X.cols() != cols)
      raise(ErrorCode::DimensionMismatch,
            std::string(name) + " is " + std::to_string(X.rows()) + "x" +
                std::to_string(X.cols()) + ", expected " + std::to_string(rows) + "x" +
                std::to_string(cols));
    if (!all_finite(X)) raise(ErrorCode::NonFiniteEntry, std::string(name) + " has a non-finite entry");
  };
  check(sys.A, sys.n_state, sys.n_state, "A");
  check(sys.B, sys.n_state, sys.n_in, "B");
  check(sys.C, sys.n_out, sys.n_state, "C");
  check(sys.D, sys.n_out, sys.n_in, "D");
}

TransferSample eval_transfer(const SystemRealization& sys, Complex z, double condition_cap) {
  validate(sys);
  TransferSample sample;
  sample.z = z;
  if (sys.n_state == 0) {
    sample.value = sys.D;
    sample.condition = 1.0;
    return sample;
  }
  Matrix R = Matrix::Identity(sys.n_state, sys.n_state) - z * sys.A;
  Eigen::PartialPivLU<Matrix> lu(R);
  const double rcond = lu.rcond();
  sample.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(sample.condition < condition_cap))
    raise(ErrorCode::SingularResolvent,
          "I - zA at z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
              ") has condition estimate " + std::to_string(sample.condition));
  sample.value = sys.D + z * (sys.C * lu.solve(sys.B));
  return sample;
}

std::vector<Matrix> markov_coefficients(const SystemRealization& sys, int count) {
  validate(sys);
  if (count < 1) raise(ErrorCode::DimensionMismatch, "count must be at least 1");
  std::vector<Matrix> moments;
  moments.reserve(static_cast<size_t>(count));
  moments.push_back(sys.D);
  Matrix K = sys.B;  // A^{n-1} B
  for (int n = 1; n < count; ++n) {
    moments.push_back(sys.C * K);
    K = sys.A * K;
  }
  return moments;
}

SystemRealization adjoint_system(const SystemRealization& sys) {
  validate(sys);
  return SystemRealization::make(sys.A.adjoint(), sys.C.adjoint(), sys.B.adjoint(),
                                 sys.D.adjoint());
}

SystemRealization transform_system(const SystemRealization& sys, const Matrix& T,
                                   double condition_cap) {
  validate(sys);
  if (T.rows() != sys.n_state || T.cols() != sys.n_state)
    raise(ErrorCode::DimensionMismatch, "T must be n_state x n_state");
  if (sys.n_state == 0) return sys;
  const double cond = condition_number(T);
  if (!(cond < condition_cap))
    raise(ErrorCode::SingularTransform, "condition number " + std::to_string(cond));
  Eigen::PartialPivLU<Matrix> lu(T.transpose());
  // X T^{-1} computed as solve(T^T, X^T)^T, no explicit inverse.
  Matrix Aprime = lu.solve((T * sys.A).transpose()).transpose();
  Matrix Cprime = lu.solve(sys.C.transpose()).transpose();
  return SystemRealization::make(std::move(Aprime), T * sys.B, std::move(Cprime), sys.D);
}

SystemRealization scale_io(const SystemRealization& sys, double gamma) {
  validate(sys);
  if (!(gamma > 0.0)) raise(ErrorCode::NonPositiveScale, "gamma must be positive");
  return SystemRealization::make(sys.A, gamma * sys.B, sys.C, gamma * sys.D);
}

Trajectory simulate(const SystemRealization& sys, const Vector& x0,
                    const std::vector<Vector>& inputs) {
  validate(sys);
  if (x0.size() != sys.n_state) raise(ErrorCode::DimensionMismatch, "x0 has wrong dimension");
  Trajectory traj;
  traj.inputs = inputs;
  traj.states.reserve(inputs.size() + 1);
  traj.outputs.reserve(inputs.size());
  Vector x = x0;
  traj.states.push_back(x);
  for (const Vector& u : inputs) {
    if (u.size() != sys.n_in) raise(ErrorCode::DimensionMismatch, "input has wrong dimension");
    traj.outputs.push_back(sys.C * x + sys.D * u);
    x = sys.A * x + sys.B * u;
    traj.states.push_back(x);
  }
  return traj;
}

ContractionReport contraction_check(const Matrix& M, double tol) {
  ContractionReport report;
  report.sigma_max = operator_norm(M);
  report.is_contraction = report.sigma_max <= 1.0 + tol;
  return report;
}

}  // namespace brlkit

#include "brlkit/kyp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "brlkit/errors.hpp"
#include "brlkit/hinf.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"

namespace brlkit {

namespace {

Matrix checked_hermitian(const SystemRealization& sys, const Matrix& H, double hermitian_tol) {
  if (H.rows() != sys.n_state || H.cols() != sys.n_state)
    raise(ErrorCode::DimensionMismatch, "H must be n_state x n_state");
  if ((H - H.adjoint()).norm() > hermitian_tol * (1.0 + H.norm()))
    raise(ErrorCode::NotHermitian, "H fails the symmetry tolerance");
  return hermitize(H);
}

// I - B*HB - D*D, with its positivity floor enforced.
Matrix middle_term(const SystemRealization& sys, const Matrix& H, double middle_floor) {
  Matrix mid = Matrix::Identity(sys.n_in, sys.n_in) - sys.B.adjoint() * H * sys.B -
               sys.D.adjoint() * sys.D;
  mid = hermitize(mid);
  const double floor = middle_floor * (1.0 + H.norm());
  if (sys.n_in > 0 && hermitian_min_eig(mid) <= floor)
    raise(ErrorCode::SingularMiddleTerm, "I - B*HB - D*D is not positive-definite");
  return mid;
}

}  // namespace

Matrix kyp_slack(const SystemRealization& sys, const Matrix& H, double hermitian_tol) {
  validate(sys);
  const Matrix Hh = checked_hermitian(sys, H, hermitian_tol);
  const Index n = sys.n_state, m = sys.n_in, p = sys.n_out;
  const Matrix M = sys.system_matrix();
  Matrix w_in = Matrix::Zero(n + m, n + m);
  w_in.topLeftCorner(n, n) = Hh;
  w_in.bottomRightCorner(m, m).setIdentity();
  Matrix w_out = Matrix::Zero(n + p, n + p);
  w_out.topLeftCorner(n, n) = Hh;
  w_out.bottomRightCorner(p, p).setIdentity();
  return hermitize(w_in - M.adjoint() * w_out * M);
}

double spatial_kyp_check(const SystemRealization& sys, const Matrix& H_sqrt,
                         const std::vector<std::pair<Vector, Vector>>& samples) {
  validate(sys);
  if (H_sqrt.rows() != sys.n_state || H_sqrt.cols() != sys.n_state)
    raise(ErrorCode::DimensionMismatch, "H_sqrt must be n_state x n_state");
  double worst = 0.0;
  bool first = true;
  for (const auto& [x, u] : samples) {
    if (x.size() != sys.n_state || u.size() != sys.n_in)
      raise(ErrorCode::DimensionMismatch, "sample has wrong dimensions");
    const Vector xw = H_sqrt * x;
    const double in_energy = xw.squaredNorm() + u.squaredNorm();
    const Vector x_next = sys.A * x + sys.B * u;
    const Vector y = sys.C * x + sys.D * u;
    const double out_energy = (H_sqrt * x_next).squaredNorm() + y.squaredNorm();
    const double value = in_energy - out_energy;
    worst = first ? value : std::min(worst, value);
    first = false;
  }
  return worst;
}

Matrix riccati_step(const SystemRealization& sys, const Matrix& H, double middle_floor) {
  validate(sys);
  const Matrix mid = middle_term(sys, H, middle_floor);
  const Matrix cross = sys.A.adjoint() * H * sys.B + sys.C.adjoint() * sys.D;
  Matrix next = sys.A.adjoint() * H * sys.A + sys.C.adjoint() * sys.C;
  if (sys.n_in > 0 && cross.size() > 0)
    next += cross * mid.llt().solve(cross.adjoint());
  return hermitize(next);
}

Matrix riccati_residual(const SystemRealization& sys, const Matrix& H, double middle_floor) {
  const Matrix Hh = checked_hermitian(sys, H, kTol.hermitian);
  return hermitize(Hh - riccati_step(sys, Hh, middle_floor));
}

KypCertificate riccati_solve(const SystemRealization& sys, double tol, int max_iter,
                             int gate_samples) {
  validate(sys);
  const double rho = spectral_radius(sys.A);
  if (rho >= 1.0 - kTol.stability_margin)
    raise(ErrorCode::UnstableSystem, "spectral radius " + std::to_string(rho) + " >= 1");
  if (gate_samples > 0) {
    const double s = sample_norm(sys, gate_samples, 1.0);
    if (s >= 1.0)
      raise(ErrorCode::InfeasibleScaling,
            "sampled H-infinity norm " + std::to_string(s) + " is not below 1");
  }
  Matrix H = Matrix::Zero(sys.n_state, sys.n_state);
  for (int iter = 1; iter <= max_iter; ++iter) {
    Matrix next;
    try {
      next = riccati_step(sys, H, kTol.middle_term_floor);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularMiddleTerm)
        raise(ErrorCode::InfeasibleScaling,
              "middle term lost positivity at iteration " + std::to_string(iter));
      throw;
    }
    const double delta = (next - H).norm();
    H = std::move(next);
    if (delta <= tol * (1.0 + H.norm())) {
      KypCertificate cert;
      cert.H = H;
      cert.mode = KypMode::standard;
      cert.margin = hermitian_min_eig(kyp_slack(sys, H));
      cert.method = KypMethod::riccati_fixed_point;
      cert.iterations = iter;
      return cert;
    }
  }
  raise(ErrorCode::NoConvergence,
        "Riccati iteration did not converge in " + std::to_string(max_iter) + " steps");
}

KypCertificate certificate_from_similarity(const SystemRealization& sys,
                                           const SimilarityMap& map,
                                           const SystemRealization& contractive_target,
                                           double tol) {
  const SimilarityResiduals res = verify_similarity(sys, contractive_target, map);
  if (res.max_residual() > tol)
    raise(ErrorCode::InvalidSimilarity,
          "similarity residual " + std::to_string(res.max_residual()) + " exceeds tolerance");
  const ContractionReport report = contraction_check(contractive_target.system_matrix(), tol);
  if (!report.is_contraction)
    raise(ErrorCode::NotContractiveTarget,
          "target system matrix has norm " + std::to_string(report.sigma_max));
  KypCertificate cert;
  cert.H = hermitize(map.gamma.adjoint() * map.gamma);
  cert.mode = KypMode::standard;
  cert.margin = hermitian_min_eig(kyp_slack(sys, cert.H));
  cert.method = KypMethod::from_similarity;
  cert.iterations = 0;
  return cert;
}

SystemRealization contractive_similar(const SystemRealization& sys, const KypCertificate& cert) {
  validate(sys);
  if (cert.H.rows() != sys.n_state || cert.H.cols() != sys.n_state)
    raise(ErrorCode::DimensionMismatch, "certificate H has wrong shape");
  const auto [root, inv_root] = hermitian_sqrt_pair(cert.H);
  return SystemRealization::make(root * sys.A * inv_root, root * sys.B, sys.C * inv_root,
                                 sys.D);
}

SystemRealization augment(const SystemRealization& sys, double epsilon) {
  validate(sys);
  if (!(epsilon > 0.0)) raise(ErrorCode::NonPositiveEpsilon, "epsilon must be positive");
  const Index n = sys.n_state, m = sys.n_in, p = sys.n_out;
  Matrix B(n, m + n);
  B.leftCols(m) = sys.B;
  B.rightCols(n) = epsilon * Matrix::Identity(n, n);
  Matrix C = Matrix::Zero(p + n + m, n);
  C.topRows(p) = sys.C;
  C.middleRows(p, n) = epsilon * Matrix::Identity(n, n);
  Matrix D = Matrix::Zero(p + n + m, m + n);
  D.topLeftCorner(p, m) = sys.D;
  D.bottomLeftCorner(m, m) = epsilon * Matrix::Identity(m, m);
  return SystemRealization::make(sys.A, std::move(B), std::move(C), std::move(D));
}

double choose_epsilon(const SystemRealization& sys, int samples, double tol) {
  validate(sys);
  const double rho = spectral_radius(sys.A);
  if (rho >= 1.0 - kTol.stability_margin)
    raise(ErrorCode::UnstableSystem, "spectral radius " + std::to_string(rho) + " >= 1");
  const double s = sample_norm(sys, samples, 1.0);
  if (s >= 1.0 - tol)
    raise(ErrorCode::NotStrictSchur,
          "sampled H-infinity norm " + std::to_string(s) + " is not below 1");
  const double cap = 0.5 * (1.0 + s);
  double epsilon = 0.25 * (1.0 - s);
  for (int i = 0; i < 60; ++i) {
    if (sample_norm(augment(sys, epsilon), samples, 1.0) <= cap) return epsilon;
    epsilon *= 0.5;
  }
  raise(ErrorCode::NoEpsilonFound, "no epsilon found in 60 halvings");
}

KypCertificate strict_solve(const SystemRealization& sys, double tol, int max_iter, int samples) {
  const double epsilon = choose_epsilon(sys, samples, tol);
  KypCertificate cert = riccati_solve(augment(sys, epsilon), tol, max_iter, samples);
  cert.mode = KypMode::strict;
  cert.epsilon = epsilon;
  cert.method = KypMethod::augmentation;
  cert.margin = hermitian_min_eig(kyp_slack(sys, cert.H));
  return cert;
}

double dissipation_check(const SystemRealization& sys, const Matrix& H, const Trajectory& traj,
                         double consistency_tol) {
  validate(sys);
  const Matrix Hh = checked_hermitian(sys, H, kTol.hermitian);
  if (traj.states.size() != traj.inputs.size() + 1 ||
      traj.outputs.size() != traj.inputs.size())
    raise(ErrorCode::InconsistentTrajectory, "sequence lengths do not match");
  auto storage = [&](const Vector& x) { return (x.adjoint() * Hh * x)(0, 0).real(); };
  double worst = 0.0;
  for (size_t k = 0; k < traj.inputs.size(); ++k) {
    const Vector& x = traj.states[k];
    const Vector& u = traj.inputs[k];
    if (x.size() != sys.n_state || u.size() != sys.n_in ||
        traj.outputs[k].size() != sys.n_out)
      raise(ErrorCode::InconsistentTrajectory, "vector dimensions do not match the system");
    const double scale = 1.0 + x.norm() + u.norm();
    if ((traj.states[k + 1] - sys.A * x - sys.B * u).norm() > consistency_tol * scale ||
        (traj.outputs[k] - sys.C * x - sys.D * u).norm() > consistency_tol * scale)
      raise(ErrorCode::InconsistentTrajectory,
            "recursion violated at step " + std::to_string(k));
    const double step = storage(traj.states[k + 1]) - storage(x) - u.squaredNorm() +
                        traj.outputs[k].squaredNorm();
    worst = k == 0 ? step : std::max(worst, step);
  }
  return worst;
}

}  // namespace brlkit

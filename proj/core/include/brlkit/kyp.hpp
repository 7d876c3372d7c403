#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "brlkit/config.hpp"
#include "brlkit/similarity.hpp"
#include "brlkit/system.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

enum class KypMode { standard, strict };
enum class KypMethod { riccati_fixed_point, from_similarity, augmentation };

/**
 * A positive-definite H together with how it was obtained and how much slack
 * it leaves in the inequality M* diag(H, I) M <= diag(H, I). The margin is
 * the smallest eigenvalue of the slack matrix; strict certificates must keep
 * it positive.
 */
struct KypCertificate {
  Matrix H;
  KypMode mode = KypMode::standard;
  double margin = 0.0;
  std::optional<double> epsilon;  ///< augmentation parameter, when used
  KypMethod method = KypMethod::riccati_fixed_point;
  int iterations = 0;
};

/// S = diag(H, I_in) - M* diag(H, I_out) M; the inequality holds iff S >= 0.
Matrix kyp_slack(const SystemRealization& sys, const Matrix& H,
                 double hermitian_tol = kTol.hermitian);

/// Minimum over the samples (x, u) of
/// ||diag(H_sqrt, I)(x, u)||^2 - ||diag(H_sqrt, I) M (x, u)||^2,
/// the spatial form of the same inequality.
double spatial_kyp_check(const SystemRealization& sys, const Matrix& H_sqrt,
                         const std::vector<std::pair<Vector, Vector>>& samples);

/// H - A*HA - C*C - (A*HB + C*D)(I - B*HB - D*D)^{-1}(B*HA + D*C).
/// Throws SingularMiddleTerm when the middle term is not positive within the
/// floor.
Matrix riccati_residual(const SystemRealization& sys, const Matrix& H,
                        double middle_floor = kTol.middle_term_floor);

/// One fixed-point update H -> A*HA + C*C + (A*HB + C*D)(...)^{-1}(B*HA + D*C).
Matrix riccati_step(const SystemRealization& sys, const Matrix& H,
                    double middle_floor = kTol.middle_term_floor);

/// Iterates riccati_step from H = 0 until the update norm drops below
/// tol * (1 + ||H||). Iterates are monotone nondecreasing and converge to the
/// minimal solution whenever the sampled H-infinity norm is below one.
/// gate_samples <= 0 skips the sampled-norm gate.
KypCertificate riccati_solve(const SystemRealization& sys, double tol = kTol.relative,
                             int max_iter = kTol.riccati_max_iterations,
                             int gate_samples = kTol.circle_samples);

/// H = Gamma* Gamma from a verified similarity onto a contractive realization.
KypCertificate certificate_from_similarity(const SystemRealization& sys,
                                           const SimilarityMap& map,
                                           const SystemRealization& contractive_target,
                                           double tol = kTol.relative);

/// (H^{1/2} A H^{-1/2}, H^{1/2} B, C H^{-1/2}, D): the similarity that turns a
/// certificate into a contractive system matrix.
SystemRealization contractive_similar(const SystemRealization& sys, const KypCertificate& cert);

/// The epsilon-augmented realization: B gains an epsilon*I input block, C and
/// D gain epsilon*I output blocks; exactly minimal for every epsilon > 0.
SystemRealization augment(const SystemRealization& sys, double epsilon);

/// Halving search from (1 - s)/4 for an epsilon whose augmented system keeps
/// the sampled norm at or below (1 + s)/2, where s is the sampled norm of the
/// base system.
double choose_epsilon(const SystemRealization& sys, int samples = kTol.circle_samples,
                      double tol = kTol.relative);

/// Strict certificate via augmentation: margin >= epsilon^2 up to solver
/// tolerance.
KypCertificate strict_solve(const SystemRealization& sys, double tol = kTol.relative,
                            int max_iter = kTol.riccati_max_iterations,
                            int samples = kTol.circle_samples);

/// Worst step of S(x(n+1)) - S(x(n)) - ||u(n)||^2 + ||y(n)||^2 along the
/// trajectory, with storage S(x) = <Hx, x>. Nonpositive for every valid
/// certificate. Throws InconsistentTrajectory when the trajectory does not
/// satisfy the recursion.
double dissipation_check(const SystemRealization& sys, const Matrix& H, const Trajectory& traj,
                         double consistency_tol = kTol.trajectory_consistency);

}  // namespace brlkit

#pragma once

#include <string_view>

#include "brlkit/config.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/system.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

/// Two-sided H-infinity bound: lower comes from circle sampling, upper from a
/// feasibility bisection backed by the Riccati solver.
struct NormBound {
  double lower = 0.0;
  double upper = 0.0;
  int samples = 0;
  bool certified = false;
};

enum class SchurClassification { strict, boundary, outside, unstable };

std::string_view to_string(SchurClassification c);

/// Max over equispaced points on |z| = radius of sigma_max(F(z)). Requires the
/// circle to stay clear of 1/spec(A).
double sample_norm(const SystemRealization& sys, int n_points = kTol.circle_samples,
                   double radius = 1.0);

/// Bisection on gamma: feasible iff the Riccati iteration converges on the
/// system scaled by 1/gamma. A failed iteration counts as infeasible, which is
/// conservative and keeps the upper bound sound (possibly loose near the true
/// norm). The reported lower bound is the sampled maximum.
NormBound hinf_certified(const SystemRealization& sys, double tol = 1e-6,
                         int samples = kTol.circle_samples,
                         int max_iter = kTol.feasibility_max_iterations);

/// unstable when spec(A) >= 1 (a statement about the realization, not the
/// function); strict when a gamma below 1 - tol is certifiable; outside when
/// the sampled lower bound exceeds 1 + tol; boundary otherwise.
SchurClassification classify_schur(const SystemRealization& sys, double tol = 1e-6,
                                   int samples = kTol.circle_samples,
                                   int max_iter = kTol.feasibility_max_iterations);

}  // namespace brlkit

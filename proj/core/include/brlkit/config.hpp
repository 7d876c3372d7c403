#pragma once

namespace brlkit {

/// Central numerical policy record. Every operation that needs a tolerance
/// exposes it as a defaulted parameter drawn from here, so test suites can
/// tighten or loosen the whole toolkit uniformly by passing their own values.
struct ToleranceConfig {
  double relative = 1e-9;            ///< general-purpose relative tolerance
  double rank_cutoff = 1e-9;         ///< numerical rank: sigma <= cutoff * sigma_max
  double condition_cap = 1e12;       ///< resolvent / transform conditioning limit
  double hermitian = 1e-12;          ///< Hermitian symmetry check
  double stein_update = 1e-14;       ///< Stein doubling stop: ||update|| < this * ||current||
  double middle_term_floor = 1e-12;  ///< Riccati middle-term positivity floor, scaled by 1 + ||H||
  double stability_margin = 1e-9;    ///< spectral radius must stay below 1 - margin
  double trajectory_consistency = 1e-8;
  int circle_samples = 4096;         ///< default sampling density on |z| = r
  int riccati_max_iterations = 10000;
  int feasibility_max_iterations = 200000;  ///< iteration cap for the certified-bisection oracle
};

inline constexpr ToleranceConfig kTol{};

}  // namespace brlkit

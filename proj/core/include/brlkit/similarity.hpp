#pragma once

#include "brlkit/config.hpp"
#include "brlkit/system.hpp"
#include "brlkit/types.hpp"

namespace brlkit {

/// Operator norms of the intertwining defects of a candidate similarity:
/// Gamma A - A' Gamma, Gamma B - B', C - C' Gamma, D - D', and
/// gamma_left * gamma - I.
struct SimilarityResiduals {
  double r_AX = 0.0;
  double r_B = 0.0;
  double r_C = 0.0;
  double r_D = 0.0;
  double r_inv = 0.0;
  double max_residual() const;
};

/// State-space similarity candidate from the Hankel-factorization formulas,
/// gamma = Wc' Wc^dagger with left inverse gamma_left = Wo^dagger Wo'.
struct SimilarityMap {
  Matrix gamma;       ///< maps states of the first system to the second
  Matrix gamma_left;
  SimilarityResiduals residuals;
  bool valid = false;
};

/// True iff D = D' and the first `count` Markov coefficients agree within tol
/// (operator norm, scale-relative). count <= 0 selects the default
/// n_state + n'_state, which suffices at finite dimension.
bool moment_match(const SystemRealization& a, const SystemRealization& b, int count = 0,
                  double tol = kTol.relative);

/// Builds the similarity between two minimal realizations of one transfer
/// function. Horizon defaults to max of the state dimensions (larger values
/// are allowed for conditioning experiments). Throws NotMinimal /
/// MomentMismatch when the hypotheses fail and IllConditioned when the
/// recovered square gamma exceeds the condition cap. The `valid` flag is
/// derived from the recomputed residuals, never asserted blindly.
SimilarityMap compute_similarity(const SystemRealization& a, const SystemRealization& b,
                                 double tol = kTol.relative, int horizon = 0,
                                 double rank_cutoff = kTol.rank_cutoff,
                                 double condition_cap = kTol.condition_cap);

/// Recomputes all five residuals from scratch, independently of how the map
/// was produced.
SimilarityResiduals verify_similarity(const SystemRealization& a, const SystemRealization& b,
                                      const SimilarityMap& map);

}  // namespace brlkit

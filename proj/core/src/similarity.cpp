#include "brlkit/similarity.hpp"

#include <algorithm>
#include <string>

#include "brlkit/errors.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"

namespace brlkit {

double SimilarityResiduals::max_residual() const {
  return std::max({r_AX, r_B, r_C, r_D, r_inv});
}

bool moment_match(const SystemRealization& a, const SystemRealization& b, int count, double tol) {
  validate(a);
  validate(b);
  if (a.n_in != b.n_in || a.n_out != b.n_out)
    raise(ErrorCode::DimensionMismatch, "input/output dimensions differ");
  if (count <= 0) count = static_cast<int>(a.n_state + b.n_state);
  count = std::max(count, 1);  // F_0 = D is always compared
  const auto Fa = markov_coefficients(a, count);
  const auto Fb = markov_coefficients(b, count);
  for (int k = 0; k < count; ++k) {
    const double scale = 1.0 + operator_norm(Fa[static_cast<size_t>(k)]) +
                         operator_norm(Fb[static_cast<size_t>(k)]);
    if (operator_norm(Fa[static_cast<size_t>(k)] - Fb[static_cast<size_t>(k)]) > tol * scale)
      return false;
  }
  return true;
}

SimilarityResiduals verify_similarity(const SystemRealization& a, const SystemRealization& b,
                                      const SimilarityMap& map) {
  validate(a);
  validate(b);
  if (a.n_in != b.n_in || a.n_out != b.n_out)
    raise(ErrorCode::DimensionMismatch, "input/output dimensions differ");
  if (map.gamma.rows() != b.n_state || map.gamma.cols() != a.n_state ||
      map.gamma_left.rows() != a.n_state || map.gamma_left.cols() != b.n_state)
    raise(ErrorCode::DimensionMismatch, "similarity map has wrong shape");
  SimilarityResiduals r;
  r.r_AX = operator_norm(map.gamma * a.A - b.A * map.gamma);
  r.r_B = operator_norm(map.gamma * a.B - b.B);
  r.r_C = operator_norm(a.C - b.C * map.gamma);
  r.r_D = operator_norm(a.D - b.D);
  r.r_inv = operator_norm(map.gamma_left * map.gamma -
                          Matrix::Identity(a.n_state, a.n_state));
  return r;
}

SimilarityMap compute_similarity(const SystemRealization& a, const SystemRealization& b,
                                 double tol, int horizon, double rank_cutoff,
                                 double condition_cap) {
  validate(a);
  validate(b);
  if (a.n_in != b.n_in || a.n_out != b.n_out)
    raise(ErrorCode::DimensionMismatch, "input/output dimensions differ");
  if (!classify_minimality(a, rank_cutoff).minimal)
    raise(ErrorCode::NotMinimal, "first system is not minimal");
  if (!classify_minimality(b, rank_cutoff).minimal)
    raise(ErrorCode::NotMinimal, "second system is not minimal");
  if (!moment_match(a, b, 0, tol))
    raise(ErrorCode::MomentMismatch, "transfer functions differ");

  const int N = horizon > 0
                    ? horizon
                    : static_cast<int>(std::max<Index>(std::max(a.n_state, b.n_state), 1));
  SimilarityMap map;
  if (a.n_state == 0 && b.n_state == 0) {
    map.gamma.resize(0, 0);
    map.gamma_left.resize(0, 0);
    map.residuals = verify_similarity(a, b, map);
    map.valid = true;
    return map;
  }
  const OperatorTruncation ta = truncate_operators(a, N);
  const OperatorTruncation tb = truncate_operators(b, N);
  // Minimality makes Wc full row rank and Wo full column rank, so the
  // pseudo-inverses are true one-sided inverses.
  map.gamma = tb.Wc * pseudo_inverse(ta.Wc, rank_cutoff);
  map.gamma_left = pseudo_inverse(ta.Wo, rank_cutoff) * tb.Wo;
  if (map.gamma.rows() == map.gamma.cols() && map.gamma.size() > 0) {
    const double cond = condition_number(map.gamma);
    if (!(cond < condition_cap))
      raise(ErrorCode::IllConditioned,
            "similarity condition number " + std::to_string(cond));
  }
  map.residuals = verify_similarity(a, b, map);
  map.valid = map.residuals.max_residual() <= tol;
  return map;
}

}  // namespace brlkit

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brlkit/errors.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"
#include "brlkit/similarity.hpp"
#include "support/test_systems.hpp"

using namespace brlkit;
using namespace brlkit::testing;

namespace {

SystemRealization padded_scalar() {
  // 2-state padding of F(z) = z/(1 - z/2) with a hidden 1/3 mode
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 0.5;
  A(1, 1) = 1.0 / 3.0;
  Matrix B(2, 1), C(1, 2), D(1, 1);
  B << 1, 0;
  C << 1, 0;
  D << 0;
  return SystemRealization::make(A, B, C, D);
}

}  // namespace

TEST_CASE("moment_match") {
  Rng rng(51);
  const SystemRealization sys = random_minimal_stable(rng, 4, 2, 2, 0.8);

  SUBCASE("similarity transforms preserve moments") {
    const SystemRealization moved = transform_system(sys, random_well_conditioned(rng, 4, 60.0));
    CHECK(moment_match(sys, moved));
  }
  SUBCASE("padding with a hidden mode preserves moments") {
    CHECK(moment_match(scalar_system(0.5, 1.0, 1.0, 0.0), padded_scalar()));
  }
  SUBCASE("io scaling changes F_1") {
    const SystemRealization doubled = scale_io(sys, 2.0);
    CHECK_FALSE(moment_match(sys, doubled));
  }
  SUBCASE("io dimension mismatch is rejected") {
    const SystemRealization other = random_stable(rng, 4, 3, 2);
    CHECK_THROWS_AS(moment_match(sys, other), Error);
  }
}

TEST_CASE("compute_similarity on identical systems gives the identity") {
  Rng rng(52);
  const SystemRealization sys = random_minimal_stable(rng, 4, 2, 2, 0.8);
  const SimilarityMap map = compute_similarity(sys, sys);
  CHECK(map.valid);
  CHECK((map.gamma - Matrix::Identity(4, 4)).norm() < 1e-12);
  CHECK((map.gamma_left - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("construct-then-recover: gamma equals the planted transform") {
  Rng rng(53);
  for (int trial = 0; trial < 12; ++trial) {
    const Index n = 2 + trial % 5;
    const SystemRealization sys =
        random_minimal_stable(rng, n, 1 + trial % 3, 1 + (trial / 3) % 3, 0.8);
    const Matrix T = random_well_conditioned(rng, n, 100.0);
    const SystemRealization moved = transform_system(sys, T);
    const SimilarityMap map = compute_similarity(sys, moved, 1e-8);
    CHECK(map.valid);
    CHECK((map.gamma - T).norm() <= 1e-8 * T.norm());
    CHECK(map.residuals.max_residual() <= 1e-8);
  }
}

TEST_CASE("compute_similarity error paths") {
  Rng rng(54);
  SUBCASE("non-minimal input is refused") {
    const SystemRealization sys = scalar_system(0.5, 1.0, 1.0, 0.0);
    CHECK_THROWS_AS(compute_similarity(padded_scalar(), sys), Error);
    try {
      compute_similarity(padded_scalar(), sys);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotMinimal);
    }
  }
  SUBCASE("different transfer functions are refused") {
    const SystemRealization a = random_minimal_stable(rng, 3, 2, 2, 0.8);
    const SystemRealization b = random_minimal_stable(rng, 3, 2, 2, 0.8);
    try {
      compute_similarity(a, b);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MomentMismatch);
    }
  }
}

TEST_CASE("verify_similarity") {
  Rng rng(55);
  const SystemRealization sys = random_minimal_stable(rng, 4, 2, 2, 0.8);

  SUBCASE("identity map on identical systems has zero residuals") {
    SimilarityMap map;
    map.gamma = Matrix::Identity(4, 4);
    map.gamma_left = Matrix::Identity(4, 4);
    const SimilarityResiduals r = verify_similarity(sys, sys, map);
    CHECK(r.max_residual() == 0.0);
  }
  SUBCASE("recovered maps verify at the oracle tolerance") {
    const Matrix T = random_well_conditioned(rng, 4, 50.0);
    const SystemRealization moved = transform_system(sys, T);
    const SimilarityMap map = compute_similarity(sys, moved);
    const SimilarityResiduals r = verify_similarity(sys, moved, map);
    CHECK(r.max_residual() <= 1e-8);
  }
  SUBCASE("a corrupted gamma is caught") {
    const Matrix T = random_well_conditioned(rng, 4, 50.0);
    const SystemRealization moved = transform_system(sys, T);
    SimilarityMap map = compute_similarity(sys, moved);
    map.gamma(1, 2) += 1.0;
    const SimilarityResiduals r = verify_similarity(sys, moved, map);
    CHECK(r.max_residual() > 0.1);
  }
}

TEST_CASE("left inverse and two-sided inverse identities") {
  Rng rng(56);
  const SystemRealization sys = random_minimal_stable(rng, 5, 2, 2, 0.85);
  const Matrix T = random_well_conditioned(rng, 5, 40.0);
  const SystemRealization moved = transform_system(sys, T);
  const SimilarityMap map = compute_similarity(sys, moved);
  const Index n = sys.n_state;
  CHECK((map.gamma_left * map.gamma - Matrix::Identity(n, n)).norm() < 1e-9);
  CHECK((map.gamma * map.gamma_left - Matrix::Identity(n, n)).norm() < 1e-9);
}

TEST_CASE("window intertwining identities") {
  Rng rng(57);
  const SystemRealization sys = random_minimal_stable(rng, 4, 2, 3, 0.8);
  const Matrix T = random_well_conditioned(rng, 4, 30.0);
  const SystemRealization moved = transform_system(sys, T);
  const SimilarityMap map = compute_similarity(sys, moved);
  const int N = 4;
  const OperatorTruncation ta = truncate_operators(sys, N);
  const OperatorTruncation tb = truncate_operators(moved, N);
  CHECK((map.gamma * ta.Wc - tb.Wc).norm() < 1e-9 * (1.0 + tb.Wc.norm()));
  CHECK((moved.C * tb.Wc - sys.C * ta.Wc).norm() < 1e-9 * (1.0 + (sys.C * ta.Wc).norm()));
}

TEST_CASE("similarity preserves spectral radius and minimality") {
  Rng rng(58);
  const SystemRealization sys = random_minimal_stable(rng, 4, 2, 2, 0.8);
  const Matrix T = random_well_conditioned(rng, 4, 25.0);
  const SystemRealization moved = transform_system(sys, T);
  CHECK(spectral_radius(moved.A) == doctest::Approx(spectral_radius(sys.A)).epsilon(1e-9));
  CHECK(classify_minimality(moved).minimal);
}

TEST_CASE("similarity composes along a chain of realizations") {
  Rng rng(59);
  const SystemRealization a = random_minimal_stable(rng, 4, 2, 2, 0.8);
  const Matrix T1 = random_well_conditioned(rng, 4, 20.0);
  const Matrix T2 = random_well_conditioned(rng, 4, 20.0);
  const SystemRealization b = transform_system(a, T1);
  const SystemRealization c = transform_system(b, T2);
  const Matrix g_ab = compute_similarity(a, b).gamma;
  const Matrix g_bc = compute_similarity(b, c).gamma;
  const Matrix g_ac = compute_similarity(a, c).gamma;
  CHECK((g_bc * g_ab - g_ac).norm() < 1e-7 * (1.0 + g_ac.norm()));
}

TEST_CASE("valid similarity implies moment matching (sufficiency direction)") {
  Rng rng(60);
  for (int trial = 0; trial < 6; ++trial) {
    const SystemRealization sys = random_minimal_stable(rng, 3 + trial % 3, 2, 2, 0.8);
    const Matrix T = random_well_conditioned(rng, sys.n_state, 30.0);
    const SystemRealization moved = transform_system(sys, T);
    const SimilarityMap map = compute_similarity(sys, moved, 1e-8);
    REQUIRE(map.valid);
    // tolerance scaled by the norms entering C' A'^n B' - C A^n B
    const double scale = (1.0 + operator_norm(map.gamma)) *
                         (1.0 + operator_norm(sys.A)) * (1.0 + operator_norm(sys.B)) *
                         (1.0 + operator_norm(sys.C));
    CHECK(moment_match(sys, moved, 0, 1e-8 * scale * 10));
  }
}

TEST_CASE("empty-state systems are trivially similar") {
  const SystemRealization a =
      SystemRealization::make(Matrix(0, 0), Matrix(0, 2), Matrix(1, 0), Matrix::Ones(1, 2));
  const SimilarityMap map = compute_similarity(a, a);
  CHECK(map.valid);
  CHECK(map.gamma.rows() == 0);
}

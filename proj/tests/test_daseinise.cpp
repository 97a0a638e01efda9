#include <doctest.h>

#include "qlogic/checks.hpp"
#include "qlogic/daseinise.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/rng.hpp"
#include "support.hpp"

using namespace qlogic;
using qtest::diag2;
using qtest::mat_eq;

TEST_CASE("projection daseinisation fixed points and extremes") {
  Context cz = context_z();
  Context cx = context_x();
  Mat pz = diag2(1, 0);

  // Members of the context are fixed.
  CHECK(mat_eq(daseinise_proj_outer(pz, cz), pz));
  CHECK(mat_eq(daseinise_proj_inner(pz, cz), pz));

  // Across incompatible contexts the approximations collapse to 1 and 0.
  CHECK(mat_eq(daseinise_proj_outer(pz, cx), identity(2)));
  CHECK(mat_eq(daseinise_proj_inner(pz, cx), zeros(2)));

  CHECK(mat_eq(daseinise_proj_outer(zeros(2), cx), zeros(2)));
  CHECK(mat_eq(daseinise_proj_inner(identity(2), cx), identity(2)));
}

TEST_CASE("self-adjoint daseinisation on the z operator") {
  Context bot = bottom_context(2);
  Context cx = context_x();
  Context cz = context_z();

  CHECK(mat_eq(daseinise_sa_outer(pauli_z(), bot), identity(2)));
  CHECK(mat_eq(daseinise_sa_inner(pauli_z(), bot), -identity(2)));
  CHECK(mat_eq(daseinise_sa_outer(pauli_z(), cx), identity(2)));
  CHECK(mat_eq(daseinise_sa_inner(pauli_z(), cx), -identity(2)));
  CHECK(mat_eq(daseinise_sa_outer(pauli_z(), cz), pauli_z()));
  CHECK(mat_eq(daseinise_sa_inner(pauli_z(), cz), pauli_z()));
}

TEST_CASE("daseinised operators sandwich the original in spectral order") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + t % 3;
    Context c = random_context(rng, n);
    Mat a = rng.hermitian(n);
    Mat outer = daseinise_sa_outer(a, c);
    Mat inner = daseinise_sa_inner(a, c);
    CHECK(spectral_leq(inner, a));
    CHECK(spectral_leq(a, outer));
    CHECK(c.contains(outer));
    CHECK(c.contains(inner));
  }
}

TEST_CASE("oracle agreement on small random instances") {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    Context c = random_context(rng, n);
    Mat p = rng.projection(n);
    CHECK(mat_eq(daseinise_proj_outer(p, c), oracle_proj_outer(p, c)));
    CHECK(mat_eq(daseinise_proj_inner(p, c), oracle_proj_inner(p, c)));

    Mat a = rng.hermitian(n);
    CHECK(norm_inf(daseinise_sa_outer(a, c) - oracle_sa_outer(a, c)) <= 1e-8);
    CHECK(norm_inf(daseinise_sa_inner(a, c) - oracle_sa_inner(a, c)) <= 1e-8);
  }
}

TEST_CASE("complement duality is exact on atom sets") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    Context c = random_context(rng, n);
    Mat p = rng.projection(n);
    Mat lhs = daseinise_proj_inner(identity(n) - p, c);
    Mat rhs = identity(n) - daseinise_proj_outer(p, c);
    CHECK(mat_eq(lhs, rhs));
  }
}

TEST_CASE("adjunction equivalences") {
  Context cx = context_x();

  // Unit of the adjunction.
  Rng rng(24);
  Mat a = rng.hermitian(2);
  Mat b = daseinise_sa_inner(a, cx);
  auto [f1, s1] = check_adjunction(a, b, cx);
  CHECK(f1);
  CHECK(s1);

  // Both sides false is still an equivalence.
  auto [f2, s2] = check_adjunction(pauli_z(), zeros(2), cx);
  CHECK(f2);
  CHECK(s2);

  // Randomized triples.
  for (int t = 0; t < 30; ++t) {
    Context c = random_context(rng, 3);
    Mat a3 = rng.hermitian(3);
    std::vector<double> coeffs;
    for (int i = 0; i < c.natoms(); ++i) coeffs.push_back(rng.uniform(-2, 2));
    auto [f, s] = check_adjunction(a3, c.element(coeffs), c);
    CHECK(f);
    CHECK(s);
  }

  // b must live in the context.
  CHECK_THROWS_AS(check_adjunction(pauli_z(), pauli_z(), cx), NotInContext);
}

TEST_CASE("monotone chain along comparable contexts") {
  Rng rng(25);
  CheckReport r = check_monotone_chain(rng, 4);
  CHECK(r.ok());
  CHECK(r.trials > 0);
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "qlogic/errors.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/rng.hpp"
#include "support.hpp"

using namespace qlogic;
using qtest::diag2;
using qtest::mat_eq;

TEST_CASE("eigendecompose on diagonal and off-diagonal operators") {
  auto clusters = eigendecompose(pauli_z());
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].value == doctest::Approx(-1.0));
  CHECK(clusters[1].value == doctest::Approx(1.0));
  CHECK(mat_eq(clusters[1].projection, diag2(1, 0)));
  CHECK(mat_eq(clusters[0].projection, diag2(0, 1)));

  auto one = eigendecompose(identity(2));
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == doctest::Approx(1.0));
  CHECK(mat_eq(one[0].projection, identity(2)));

  auto xs = eigendecompose(pauli_x());
  REQUIRE(xs.size() == 2);
  for (const auto& ep : xs) {
    CHECK(mat_eq(ep.projection * ep.projection, ep.projection));
    CHECK(mat_eq(pauli_x() * ep.projection, ep.value * ep.projection));
  }

  Mat bad = zeros(2);
  bad(0, 1) = 1.0;  // not hermitian
  CHECK_THROWS_AS(eigendecompose(bad), NonHermitian);
}

TEST_CASE("eigendecompose reconstructs the operator") {
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    int n = 2 + t % 3;
    Mat a = rng.hermitian(n);
    Mat sum = zeros(n);
    Mat psum = zeros(n);
    for (const auto& ep : eigendecompose(a)) {
      sum += ep.value * ep.projection;
      psum += ep.projection;
    }
    CHECK(norm_inf(sum - a) <= 1e-8 * (1.0 + norm_inf(a)));
    CHECK(mat_eq(psum, identity(n), 1e-8));
  }
}

TEST_CASE("spectral projections of windows") {
  CHECK(mat_eq(spectral_projection(pauli_z(), BorelSet::interval(0.5, 1.5)), diag2(1, 0)));
  CHECK(mat_eq(spectral_projection(pauli_z(), BorelSet::real_line()), identity(2)));
  CHECK(mat_eq(spectral_projection(pauli_z(), BorelSet::interval(2, 3)), zeros(2)));
}

TEST_CASE("spectral resolutions are right thresholds") {
  CHECK(mat_eq(spectral_resolution(pauli_z(), 0.0), diag2(0, 1)));
  CHECK(mat_eq(spectral_resolution(pauli_z(), 1.0), identity(2)));
  CHECK(mat_eq(spectral_resolution(pauli_z(), -2.0), zeros(2)));

  // The strict variant drops the eigenvalue at the threshold itself.
  CHECK(mat_eq(spectral_resolution_below(pauli_z(), -1.0), zeros(2)));
  CHECK(mat_eq(spectral_resolution_below(pauli_z(), 1.0), diag2(0, 1)));
}

TEST_CASE("resolutions are monotone projection families") {
  Rng rng(12);
  Mat a = rng.hermitian(3);
  auto eig = eigendecompose(a);
  double prev = eig.front().value - 1.0;
  Mat last = spectral_resolution(a, prev);
  for (const auto& ep : eig) {
    Mat cur = spectral_resolution(a, ep.value);
    CHECK(proj_leq(last, cur));
    last = cur;
  }
  CHECK(mat_eq(last, identity(3), 1e-8));
}

TEST_CASE("projection order") {
  CHECK(proj_leq(zeros(2), diag2(1, 0)));
  CHECK(proj_leq(diag2(1, 0), identity(2)));
  Mat px = 0.5 * (identity(2) + pauli_x());
  CHECK_FALSE(proj_leq(diag2(1, 0), px));
}

TEST_CASE("spectral order basics") {
  CHECK(spectral_leq(pauli_z(), pauli_z()));
  CHECK(spectral_leq(-identity(2), pauli_z()));
  CHECK_FALSE(spectral_leq(pauli_z(), pauli_x()));
  CHECK_FALSE(spectral_leq(pauli_x(), pauli_z()));
}

TEST_CASE("spectral order equals entrywise order on commuting diagonals") {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    int n = 2 + t % 3;
    Mat a = zeros(n), b = zeros(n);
    bool entrywise = true;
    for (int i = 0; i < n; ++i) {
      double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
      a(i, i) = x;
      b(i, i) = y;
      if (x > y + 1e-12) entrywise = false;
    }
    CHECK(spectral_leq(a, b) == entrywise);
  }
}

TEST_CASE("interval sets: membership, union, snapping") {
  BorelSet s = BorelSet::interval(0.0, 1.0);  // open
  CHECK(s.contains(0.5));
  CHECK_FALSE(s.contains(0.0));
  CHECK_FALSE(s.contains(1.0));

  BorelSet c = BorelSet::interval(0.0, 1.0, true, true);
  CHECK(c.contains(0.0));
  CHECK(c.contains(1.0));

  BorelSet u = BorelSet::interval(-2.0, -1.0).unite(BorelSet::interval(3.0, 4.0));
  CHECK(u.contains(-1.5));
  CHECK(u.contains(3.5));
  CHECK_FALSE(u.contains(0.0));

  CHECK_FALSE(BorelSet::empty().contains(0.0));
  CHECK(BorelSet::real_line().contains(1e9));

  // Snapped membership pulls in boundary values within tolerance.
  CHECK(s.contains_snapped(1.0 + 1e-12, 1e-9) == s.contains_snapped(1.0 - 1e-12, 1e-9));
  CHECK(c.contains_snapped(1.0 + 1e-12, 1e-9));
}

TEST_CASE("unbounded intervals") {
  double inf = std::numeric_limits<double>::infinity();
  BorelSet up = BorelSet::interval(0.0, inf);
  CHECK(up.contains(1e12));
  CHECK_FALSE(up.contains(0.0));
  BorelSet down = BorelSet::interval(-inf, 0.0, false, true);
  CHECK(down.contains(0.0));
  CHECK(down.contains(-1e12));
}

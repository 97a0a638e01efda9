#include <doctest.h>

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "qlogic/daseinise.hpp"
#include "qlogic/dynamics.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/rng.hpp"
#include "qlogic/state.hpp"
#include "support.hpp"

using namespace qlogic;
using qtest::atom_index;
using qtest::diag2;
using qtest::mat_eq;
using qtest::poset_zx;

namespace {

Mat hadamard() {
  Mat u(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  return u;
}

Mat diag4(double a, double b, double c, double d) {
  Mat m = zeros(4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST_CASE("star homomorphism construction and application") {
  StarHom id = make_star_hom(2, 1, identity(2));
  CHECK(id.is_automorphism());
  CHECK(mat_eq(id.apply(pauli_z()), pauli_z()));

  StarHom h = make_star_hom(2, 1, hadamard());
  CHECK(mat_eq(h.apply(pauli_z()), pauli_x(), 1e-12));

  // Embedding into M_4 by doubling: a |-> a (x) I_2.
  StarHom emb = make_star_hom(2, 2, identity(4));
  CHECK(emb.target_dim() == 4);
  CHECK_FALSE(emb.is_automorphism());
  CHECK(mat_eq(emb.apply(pauli_z()), diag4(1, 1, -1, -1)));
  CHECK(mat_eq(emb.apply(identity(2)), identity(4)));

  // Multiplicativity and adjoint preservation on a sample.
  Rng rng(61);
  Mat a = rng.hermitian(2), b = rng.hermitian(2);
  CHECK(mat_eq(emb.apply(a * b), emb.apply(a) * emb.apply(b), 1e-9));
  CHECK(mat_eq(emb.apply(a).adjoint(), emb.apply(a), 1e-12));

  CHECK_THROWS_AS(make_star_hom(2, 1, 2.0 * identity(2)), BadInput);
  CHECK_THROWS_AS(make_star_hom(2, 2, identity(3)), BadInput);
}

TEST_CASE("induced context map") {
  StarHom h = make_star_hom(2, 1, hadamard());
  CHECK(context_equal(image_context(h, context_z()), context_x()));
  CHECK(context_equal(image_context(h, context_x()), context_z()));

  StarHom emb = make_star_hom(2, 2, identity(4));
  Context img = image_context(emb, context_z());
  CHECK(atom_index(img, diag4(1, 1, 0, 0)) >= 0);
  CHECK(atom_index(img, diag4(0, 0, 1, 1)) >= 0);

  auto sp = poset_zx();
  InducedContextMap m = induced_context_map(h, *sp);
  REQUIRE(m.target.size() == 3);
  for (int c = 0; c < sp->size(); ++c) {
    Context want = image_context(h, sp->at(c));
    CHECK(context_equal(m.target.at(m.image[static_cast<size_t>(c)]), want));
  }
}

TEST_CASE("commutativity reflection: injective maps pass, pinching fails") {
  Rng rng(62);
  StarHom emb = make_star_hom(2, 2, identity(4));
  std::vector<Mat> working = {pauli_z(), pauli_x()};
  CheckReport good = reflect_commutativity(
      [&](const Mat& a) { return emb.apply(a); }, 2, working, 25, rng);
  CHECK(good.ok());

  // Pinching to the diagonal makes all images commute while the sources do
  // not: the sample must refute reflection.
  auto pinch = [](const Mat& a) {
    Mat d = zeros(static_cast<int>(a.rows()));
    for (int i = 0; i < a.rows(); ++i) d(i, i) = a(i, i);
    return d;
  };
  CheckReport bad = reflect_commutativity(pinch, 2, working, 25, rng);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("inverse context map of an automorphism is the inverse bijection") {
  Rng rng(63);
  StarHom h = make_star_hom(2, 1, hadamard());
  auto sp = poset_zx();
  std::vector<Context> pre = inverse_context_map(h, *sp, rng);
  REQUIRE(pre.size() == 3);
  for (int d = 0; d < sp->size(); ++d) {
    // g[D] maps forward onto D again.
    Context forward = image_context(h, pre[static_cast<size_t>(d)]);
    CHECK(context_equal(forward, sp->at(d)));
  }
  int cz = sp->find(context_z());
  CHECK(context_equal(pre[static_cast<size_t>(cz)], context_x()));
}

TEST_CASE("inverse context map through an embedding") {
  Rng rng(64);
  StarHom emb = make_star_hom(2, 2, identity(4));
  Context fz = image_context(emb, context_z(), "fz");
  ContextPoset pb = build_poset({fz}, true, true);
  std::vector<Context> pre = inverse_context_map(emb, pb, rng);
  REQUIRE(static_cast<int>(pre.size()) == pb.size());
  for (int d = 0; d < pb.size(); ++d) {
    if (pb.at(d).natoms() == 2) CHECK(context_equal(pre[static_cast<size_t>(d)], context_z()));
    else CHECK(context_equal(pre[static_cast<size_t>(d)], bottom_context(2)));
  }
}

TEST_CASE("point pullback along the induced map") {
  StarHom h = make_star_hom(2, 1, hadamard());
  Context cz = context_z();
  Context hx = image_context(h, cz);  // equals the x context
  Mat px = 0.5 * (identity(2) + pauli_x());
  SpectrumPoint lam{hx, atom_index(hx, px)};
  SpectrumPoint back = sigma_map(h, lam, cz);
  CHECK(mat_eq(back.atom(), diag2(1, 0), 1e-9));

  StarHom emb = make_star_hom(2, 2, identity(4));
  Context fz = image_context(emb, cz);
  SpectrumPoint lam4{fz, atom_index(fz, diag4(1, 1, 0, 0))};
  SpectrumPoint back4 = sigma_map(emb, lam4, cz);
  CHECK(mat_eq(back4.atom(), diag2(1, 0)));

  CHECK_THROWS_AS(sigma_map(h, SpectrumPoint{context_z(), 0}, context_z()), NotInImage);
}

TEST_CASE("pullback stage-index sets: image stages are a subfamily") {
  StarHom emb = make_star_hom(2, 2, identity(4));
  auto pa = poset_zx();
  Rng rng(65);
  // Target poset refines the image of C_z: a full diagonal M_4 context.
  Context d4 = context_from_commuting({diag4(1, 2, 3, 4)}, "D4");
  ContextPoset pb = build_poset({d4}, true, true);
  int cz = pa->find(context_z());
  auto [above, from_source] = pullback_index_sets(emb, *pa, pb, cz);

  // Every stage arising from a source context is also a stage above the
  // image, and the refinements of the image witness a strict gap.
  for (int d : from_source)
    CHECK(std::find(above.begin(), above.end(), d) != above.end());
  CHECK(from_source.size() == 1);
  CHECK(above.size() > from_source.size());

  // A target poset missing the image context cannot pull back.
  ContextPoset small = build_poset({d4}, false, true);
  CHECK_THROWS_AS(pullback_index_sets(emb, *pa, small, cz), NotInImage);
}

TEST_CASE("equivariance of spectral calculus under automorphisms") {
  StarHom h = make_star_hom(2, 1, hadamard());
  CheckReport r = check_equivariance(h, pauli_z(), BorelSet::interval(0.5, 1.5), context_x());
  CHECK(r.ok());

  // The pinned instance: transporting the outer approximation of z at the x
  // context gives the outer approximation of x at the z context.
  Mat lhs = h.apply(daseinise_sa_outer(pauli_z(), context_x()));
  Mat rhs = daseinise_sa_outer(pauli_x(), image_context(h, context_x()));
  CHECK(mat_eq(lhs, identity(2), 1e-9));
  CHECK(mat_eq(lhs, rhs, 1e-9));

  Rng rng(66);
  for (int t = 0; t < 20; ++t) {
    StarHom u = make_star_hom(3, 1, rng.unitary(3));
    CheckReport rr = check_equivariance(u, rng.hermitian(3),
                                        BorelSet::interval(rng.uniform(-2, 0), rng.uniform(0, 2)),
                                        random_context(rng, 3));
    CHECK(rr.ok());
  }

  StarHom emb = make_star_hom(2, 2, identity(4));
  CHECK_THROWS_AS(
      check_equivariance(emb, pauli_z(), BorelSet::interval(0, 1), context_z()),
      PreconditionViolated);
}

TEST_CASE("transported truth sieves agree with direct ones") {
  auto sp = poset_zx();
  const ContextPoset& p = *sp;
  State psi = pure_state({Cplx(1, 0), Cplx(0, 0)});
  BorelSet delta = BorelSet::interval(0.5, 1.5);

  StarHom id = make_star_hom(2, 1, identity(2));
  TransformedTruth t0 = transform_truth(id, psi, pauli_z(), delta, p, Variant::contravariant);
  CHECK(t0.equal_under_map);
  CHECK(t0.sieve1.members == t0.sieve2.members);

  // Conjugation by the basis-swapping unitary: the direct proposition
  // concerns x, certain exactly at the x stage; it is transported from the
  // z stage.
  StarHom h = make_star_hom(2, 1, hadamard());
  TransformedTruth t1 = transform_truth(h, psi, pauli_z(), delta, p, Variant::covariant);
  CHECK(t1.equal_under_map);
  CHECK(t1.sieve1.members == std::vector<int>{p.find(context_z())});
  CHECK(t1.sieve2.members == std::vector<int>{p.find(context_x())});

  // The maximally mixed state is certain of no maximal stage.
  State mixed = make_state(0.5 * identity(2));
  TransformedTruth t2 = transform_truth(h, mixed, pauli_z(), delta, p, Variant::covariant);
  CHECK(t2.equal_under_map);
  CHECK(t2.sieve1.members.empty());
  CHECK(t2.sieve2.members.empty());

  // A poset that is not closed under the induced map is rejected.
  auto pz_only = build_poset({context_z()}, true, true);
  CHECK_THROWS_AS(transform_truth(h, psi, pauli_z(), delta, pz_only, Variant::covariant),
                  PosetNotClosed);
}

TEST_CASE("dynamics harness") {
  Rng rng(67);
  CheckReport r = check_dynamics_suite(rng, 10, 6);
  CHECK(r.ok());
}

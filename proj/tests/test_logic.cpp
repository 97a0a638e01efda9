#include <doctest.h>

#include <memory>
#include <vector>

#include "qlogic/daseinise.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/rng.hpp"
#include "qlogic/subobject.hpp"
#include "support.hpp"

using namespace qlogic;
using qtest::atom_index;
using qtest::diag2;
using qtest::mat_eq;
using qtest::poset_zx;

namespace {

std::vector<int> stage_family(const Subobject& s, int c) {
  return s.family[static_cast<size_t>(c)];
}

}  // namespace

TEST_CASE("elementary proposition for a z window") {
  auto p = poset_zx();
  int bot = p->find(bottom_context(2));
  int cz = p->find(context_z());
  int cx = p->find(context_x());
  int up = atom_index(p->at(cz), diag2(1, 0));
  BorelSet delta = BorelSet::interval(0.5, 1.5);

  Subobject contra = elementary_prop(pauli_z(), delta, p, Variant::contravariant);
  CHECK(stage_family(contra, cz) == std::vector<int>{up});
  CHECK(stage_family(contra, cx) == std::vector<int>{0, 1});
  CHECK(stage_family(contra, bot) == std::vector<int>{0});
  CHECK(validate_subobject(contra));

  Subobject cov = elementary_prop(pauli_z(), delta, p, Variant::covariant);
  CHECK(stage_family(cov, cz) == std::vector<int>{up});
  CHECK(stage_family(cov, cx).empty());
  CHECK(stage_family(cov, bot).empty());
  CHECK(validate_subobject(cov));

  // The whole line gives the top subobject in either variant.
  for (Variant v : {Variant::contravariant, Variant::covariant}) {
    Subobject top = elementary_prop(pauli_z(), BorelSet::real_line(), p, v);
    CHECK(subobject_equal(top, top_subobject(p, v)));
  }
}

TEST_CASE("meet of disjoint windows vanishes at the diagonal stage") {
  auto p = poset_zx();
  int cz = p->find(context_z());
  Subobject pos =
      elementary_prop(pauli_z(), BorelSet::interval(0, 2), p, Variant::contravariant);
  Subobject neg =
      elementary_prop(pauli_z(), BorelSet::interval(-2, 0), p, Variant::contravariant);
  Subobject m = heyting_meet(pos, neg);
  CHECK(stage_family(m, cz).empty());
}

TEST_CASE("lattice units and distributivity") {
  auto p = poset_zx();
  Rng rng(31);
  for (Variant v : {Variant::contravariant, Variant::covariant}) {
    Subobject top = top_subobject(p, v);
    Subobject bot = bottom_subobject(p, v);
    for (int t = 0; t < 20; ++t) {
      Subobject r = random_subobject(p, v, rng);
      Subobject s = random_subobject(p, v, rng);
      Subobject u = random_subobject(p, v, rng);
      CHECK(subobject_equal(heyting_meet(s, top), s));
      CHECK(subobject_equal(heyting_join(s, bot), s));
      CHECK(subobject_equal(heyting_meet(r, heyting_join(s, u)),
                            heyting_join(heyting_meet(r, s), heyting_meet(r, u))));
      CHECK(validate_subobject(r));
    }
  }
}

TEST_CASE("implication laws and a pinned stage value") {
  auto p = poset_zx();
  Rng rng(32);
  for (Variant v : {Variant::contravariant, Variant::covariant}) {
    for (int t = 0; t < 10; ++t) {
      Subobject s = random_subobject(p, v, rng);
      Subobject u = random_subobject(p, v, rng);
      CHECK(subobject_equal(heyting_impl(s, s), top_subobject(p, v)));
      CHECK(subobject_equal(heyting_impl(top_subobject(p, v), u), u));
    }
  }

  // With the bottom stage included, S "holds everywhere" at the trivial
  // context, so S => bottom has nothing left at the finer stages either.
  Subobject s = elementary_prop(pauli_z(), BorelSet::interval(0.5, 1.5), p,
                                Variant::contravariant);
  Subobject impl_bot = heyting_impl(s, bottom_subobject(p, Variant::contravariant));
  int cz = p->find(context_z());
  CHECK(stage_family(impl_bot, cz).empty());
}

TEST_CASE("negation collapses with the bottom stage, revives without it") {
  auto p = poset_zx();
  Subobject s = elementary_prop(pauli_z(), BorelSet::interval(0.5, 1.5), p,
                                Variant::contravariant);
  CHECK(subobject_equal(heyting_neg(s), bottom_subobject(p, Variant::contravariant)));
  CHECK(subobject_equal(heyting_neg(bottom_subobject(p, Variant::contravariant)),
                        top_subobject(p, Variant::contravariant)));
  CHECK(subobject_equal(heyting_neg(top_subobject(p, Variant::contravariant)),
                        bottom_subobject(p, Variant::contravariant)));

  // Dropping the bottom exposes the orthogonal atom at the z stage.
  auto q = std::make_shared<const ContextPoset>(
      build_poset({context_z(), context_x()}, true, false));
  int cz = q->find(context_z());
  int cx = q->find(context_x());
  Subobject s2 = elementary_prop(pauli_z(), BorelSet::interval(0.5, 1.5), q,
                                 Variant::contravariant);
  Subobject n2 = heyting_neg(s2);
  int down = atom_index(q->at(cz), diag2(0, 1));
  CHECK(stage_family(n2, cz) == std::vector<int>{down});
  CHECK(stage_family(n2, cx).empty());
}

TEST_CASE("covariant negation at a maximal stage") {
  auto p = poset_zx();
  int cz = p->find(context_z());
  Subobject s = elementary_prop(pauli_z(), BorelSet::interval(0.5, 1.5), p,
                                Variant::covariant);
  Subobject n = heyting_neg(s);
  int down = atom_index(p->at(cz), diag2(0, 1));
  CHECK(stage_family(n, cz) == std::vector<int>{down});
}

TEST_CASE("closure validation accepts outputs and rejects hand-built violations") {
  auto p = poset_zx();
  Rng rng(33);
  for (Variant v : {Variant::contravariant, Variant::covariant}) {
    Subobject s = random_subobject(p, v, rng);
    Subobject t = random_subobject(p, v, rng);
    CHECK(validate_subobject(heyting_meet(s, t)));
    CHECK(validate_subobject(heyting_join(s, t)));
    CHECK(validate_subobject(heyting_impl(s, t)));
    CHECK(validate_subobject(heyting_neg(s)));
  }

  int bot = p->find(bottom_context(2));
  int cz = p->find(context_z());
  Subobject bad;
  bad.variant = Variant::contravariant;
  bad.poset = p;
  bad.family.assign(static_cast<size_t>(p->size()), {});
  bad.family[static_cast<size_t>(cz)] = {0, 1};  // full at C_z, empty at the bottom
  CHECK_FALSE(validate_subobject(bad));
  (void)bot;

  Subobject bad_cov;
  bad_cov.variant = Variant::covariant;
  bad_cov.poset = p;
  bad_cov.family.assign(static_cast<size_t>(p->size()), {});
  bad_cov.family[static_cast<size_t>(bot)] = {0};  // full below, empty above
  CHECK_FALSE(validate_subobject(bad_cov));
}

TEST_CASE("variant and poset mismatches are rejected") {
  auto p = poset_zx();
  Rng rng(34);
  Subobject a = random_subobject(p, Variant::contravariant, rng);
  Subobject b = random_subobject(p, Variant::covariant, rng);
  CHECK_THROWS_AS(heyting_meet(a, b), VariantMismatch);

  auto q = std::make_shared<const ContextPoset>(build_poset({context_z()}, true, true));
  Subobject c = random_subobject(q, Variant::contravariant, rng);
  CHECK_THROWS_AS(heyting_join(a, c), VariantMismatch);
}

TEST_CASE("contravariant implication needs a down-closed poset") {
  Context c3 = context_from_commuting({qtest::diag3(1, 2, 3)}, "D");
  auto p = std::make_shared<const ContextPoset>(build_poset({c3}, false, true));
  REQUIRE_FALSE(p->is_down_closed());
  Rng rng(35);
  Subobject s = random_subobject(p, Variant::contravariant, rng);
  Subobject t = random_subobject(p, Variant::contravariant, rng);
  CHECK_THROWS_AS(heyting_impl(s, t), PosetNotDownClosed);
  // The covariant quantifier is poset-relative and still defined.
  Subobject sc = random_subobject(p, Variant::covariant, rng);
  Subobject tc = random_subobject(p, Variant::covariant, rng);
  CHECK_NOTHROW(heyting_impl(sc, tc));
}

TEST_CASE("heyting law suite passes on mixed posets") {
  Rng rng(36);
  CheckReport r = check_heyting_laws(rng, 12);
  CHECK(r.ok());
}

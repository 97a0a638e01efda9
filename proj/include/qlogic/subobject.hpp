#ifndef QLOGIC_SUBOBJECT_HPP
#define QLOGIC_SUBOBJECT_HPP

#include <memory>
#include <vector>

#include "qlogic/linalg.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/rng.hpp"

namespace qlogic {

enum class Variant { contravariant, covariant };

// A clopen piece of the spectral space over a fixed poset: one atom subset
// per context, subject to the variant's closure rule. Atom sets are sorted
// index lists into each context's canonical atom order; all lattice
// operations are exact set operations.
//
// Closure rules for comparable D <= C (D coarser):
//   contravariant: restriction maps S at C into S at D
//   covariant: the restriction preimage of S at D lies in S at C
struct Subobject {
  Variant variant = Variant::contravariant;
  std::shared_ptr<const ContextPoset> poset;
  std::vector<std::vector<int>> family;  // family[c]: sorted atom indices

  const ContextPoset& P() const;
};

Subobject top_subobject(std::shared_ptr<const ContextPoset> p, Variant v);
Subobject bottom_subobject(std::shared_ptr<const ContextPoset> p, Variant v);

// The proposition "a lands in delta" at every stage: atoms under the outer
// (contravariant) or inner (covariant) daseinisation of the spectral
// projection chi_delta(a).
Subobject elementary_prop(const HermitianOp& a, const BorelSet& delta,
                          std::shared_ptr<const ContextPoset> p, Variant v);

// Pointwise lattice operations. Throw VariantMismatch unless both arguments
// share variant and poset.
Subobject heyting_meet(const Subobject& S, const Subobject& T);
Subobject heyting_join(const Subobject& S, const Subobject& T);

// Kripke implication. Contravariant: at C keep the points whose restriction
// to every coarser D lands in T whenever it lands in S; needs a down-closed
// poset (PosetNotDownClosed otherwise). Covariant: at C keep the points all
// of whose extensions to finer stages of the poset respect S -> T; this
// value is relative to the given finite poset.
Subobject heyting_impl(const Subobject& S, const Subobject& T);

// impl(S, bottom). The covariant route is cross-checked against the
// projection form: atom q survives at C iff q <= 1 - p(S at E) for every
// finer E; a disagreement throws PreconditionViolated.
Subobject heyting_neg(const Subobject& S);

// True iff the variant's closure rule holds at every comparable pair.
bool validate_subobject(const Subobject& S);

// Sum of the atoms of stage c that S selects.
ProjectionOp subobject_projection(const Subobject& S, int c);

// Pointwise containment (same variant and poset required).
bool subobject_leq(const Subobject& S, const Subobject& T);
bool subobject_equal(const Subobject& S, const Subobject& T);

// Random valid subobject: independent atom coin flips, then the smallest
// closure-respecting enlargement.
Subobject random_subobject(std::shared_ptr<const ContextPoset> p, Variant v, Rng& rng);

}  // namespace qlogic

#endif

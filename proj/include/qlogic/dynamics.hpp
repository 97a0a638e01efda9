#ifndef QLOGIC_DYNAMICS_HPP
#define QLOGIC_DYNAMICS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/context.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/report.hpp"
#include "qlogic/rng.hpp"
#include "qlogic/state.hpp"
#include "qlogic/subobject.hpp"

namespace qlogic {

// Unital *-homomorphism between matrix algebras in normal form:
// f(a) = w (a tensor I_k) w* from the n-by-n algebra into the kn-by-kn one.
// Every unital *-homomorphism between full matrix algebras has this shape;
// k = 1 gives the automorphisms. Always injective.
struct StarHom {
  int source_dim = 0;
  int multiplicity = 1;
  Mat unitary;

  int target_dim() const { return source_dim * multiplicity; }
  bool is_automorphism() const { return multiplicity == 1; }
  Mat apply(const Mat& a) const;
};

// Validates dimensions and unitarity.
StarHom make_star_hom(int source_dim, int multiplicity, Mat unitary);

// The image context f[C]: its atoms are exactly the images of C's atoms.
// Default label wraps the source label as "f[...]".
Context image_context(const StarHom& f, const Context& C, std::string label = "");

// The source poset pushed through f: `target` holds the deduplicated image
// contexts (plus the bottom when the source kept it), `image[i]` locates
// f[source i] in it. Order-preserving by construction.
struct InducedContextMap {
  ContextPoset target;
  std::vector<int> image;
};

InducedContextMap induced_context_map(const StarHom& f, const ContextPoset& P_A);

// Samples pairs with commuting images and checks the sources commute: all
// pairs from `working_set` plus `random_pairs` random hermitian pairs. A
// clean report means "not refuted", never "proved". The map argument is
// generic so that non-*-homomorphism controls can be fed in.
CheckReport reflect_commutativity(const std::function<Mat(const Mat&)>& f, int source_dim,
                                  const std::vector<Mat>& working_set, int random_pairs,
                                  Rng& rng);

// For each target context D the source context generated by the preimage
// algebra {a : f(a) in D}, computed from the nullspace of a |-> f(a) minus
// its compression onto D's diagonal. Runs the reflection sample first and
// throws DoesNotReflect when it is refuted; throws it as well if a preimage
// fails to be commutative.
std::vector<Context> inverse_context_map(const StarHom& f, const ContextPoset& P_B, Rng& rng);

// Pulls a point of f[C] back to the point of C it came from: the atom q of
// C with atom(lam) <= f(q). Throws NotInImage when lam does not live over
// f[C].
SpectrumPoint sigma_map(const StarHom& f, const SpectrumPoint& lam, const Context& C);

// The two stage-index sets a pulled-back family over the target poset can
// carry at source stage c: every target context above f[c], versus only
// those that are images of source contexts above c. The second is always
// contained in the first and is typically smaller. Throws NotInImage if an
// image of a source context above c is missing from P_B.
std::pair<std::vector<int>, std::vector<int>> pullback_index_sets(const StarHom& f,
                                                                  const ContextPoset& P_A,
                                                                  const ContextPoset& P_B,
                                                                  int c);

// For an automorphism h: spectral calculus and daseinisation commute with
// h. Asserts chi_delta(h(a)) = h(chi_delta(a)) and the outer/inner
// daseinisation equivariance over C and h[C]; witnesses carry max
// deviations. Throws PreconditionViolated unless multiplicity is 1.
CheckReport check_equivariance(const StarHom& h, const HermitianOp& a, const BorelSet& delta,
                               const Context& C);

// Truth transported along an automorphism, computed both ways:
//   sieve1: truth sieve of "a lands in delta" in psi,
//   sieve2: truth sieve of "h(a) lands in delta" in the pushed state
//           h(psi).
// The flag records whether the induced context map carries sieve1 onto
// sieve2, which equivariance predicts. Requires an automorphism
// (PreconditionViolated) whose induced map sends P into P
// (PosetNotClosed).
struct TransformedTruth {
  Sieve sieve1;
  Sieve sieve2;
  bool equal_under_map = false;
};

TransformedTruth transform_truth(const StarHom& h, const State& psi, const HermitianOp& a,
                                 const BorelSet& delta, const ContextPoset& P, Variant v);

// The permutation c -> position of h[C_c] in P. Throws PosetNotClosed when
// some image is missing, PreconditionViolated for multiplicity > 1.
std::vector<int> induced_perm(const StarHom& h, const ContextPoset& P);

}  // namespace qlogic

#endif

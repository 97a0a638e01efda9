#ifndef QLOGIC_VALUEMAP_HPP
#define QLOGIC_VALUEMAP_HPP

#include <utility>
#include <vector>

#include "qlogic/context.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/report.hpp"
#include "qlogic/subobject.hpp"

namespace qlogic {

// One-sided real number seen through a point of the spectral space: a
// monotone real-valued map on the stages visible from the base stage
// (coarser ones in the contravariant model, finer ones in the covariant).
// "lower"/"upper" name which one-sided approximation the section encodes,
// not the numeric order of its values.
struct MonotoneSection {
  enum class Kind { lower, upper };
  Kind kind = Kind::lower;
  Variant variant = Variant::contravariant;
  int base = -1;
  std::vector<std::pair<int, double>> values;  // (stage, value), stages sorted

  double at(int stage) const;  // BadInput when outside the domain
};

// Interval-domain element: the two-sided value at one stage.
struct IntervalValue {
  double lo = 0.0;
  double hi = 0.0;
};

// The daseinised operator evaluated through the point lam, as a pair
// (lower, upper) of sections. Contravariant: lower carries the outer
// daseinisation over coarser stages, upper the inner. Covariant: inner and
// outer swap roles, over finer stages. Value at stage D is
// tr(atom(lam) * daseinised(a at D)) / tr(atom(lam)), which for coarser D
// equals restricting lam first and evaluating there.
std::pair<MonotoneSection, MonotoneSection> das_map(const HermitianOp& a,
                                                    const ContextPoset& P,
                                                    const SpectrumPoint& lam, Variant v);

// Two-sided value at one stage; asserts inner <= outer and returns them as
// [lo, hi]. Throws PreconditionViolated if the pairing inverts.
IntervalValue interval_at(const MonotoneSection& lower, const MonotoneSection& upper,
                          int stage);

// Exhaustive continuity of the daseinised-operator map on a finite poset:
// for every threshold x (eigenvalues, midpoints, one point beyond each end)
// and every point, the strict super/sub-level preimages must be closed in
// the bundle sense: downward (with restriction) in the contravariant model,
// upward (under all extensions) in the covariant one. Both one-sided maps
// are checked.
CheckReport check_continuity(const HermitianOp& a, const ContextPoset& P, Variant v);

// Interval-domain sandwich around the window (s, r): at every stage, the
// points whose interval value passes the window test lie inside the
// elementary proposition [s < a < r], which lies inside the eps-widened
// window test. Window tests per variant:
//   contravariant: outer value > s and inner value < r
//   covariant:     inner value > s and outer value < r
// Throws PreconditionViolated unless s < r and eps > 0.
CheckReport sandwich_check(const HermitianOp& a, double s, double r, double eps,
                           const ContextPoset& P, Variant v);

// Recovers both one-sided values at a point from the projection lattice of
// its context alone, by literal enumeration of the lattice:
//   inner value = sup{ x in spec(a) : some p in P(C) with <lam,p>=1 has
//                      p <= 1 - chi_(-inf,x)(a) }
//   outer value = inf{ x in spec(a) : some p in P(C) with <lam,p>=1 has
//                      p <= chi_(-inf,x](a) }
// Empty witness sets fall back to min/max of spec(a). Returns whether each
// agrees with evaluating the daseinised operator.
std::pair<bool, bool> check_ujelly(const HermitianOp& a, const Context& C,
                                   const SpectrumPoint& lam);

// One global section over the coarser stages of c: an atom choice per stage.
struct Section {
  std::vector<std::pair<int, int>> points;  // (stage, atom), stages sorted
};

// Enumerates every stage-indexed choice of points over the down-set of c,
// keeps those continuous for the bundle topology (preimage of every
// single-point-generated clopen family is a down-set of stages), and checks
// that the survivors are exactly the restriction-compatible families, one
// per atom of c. Throws CapExceeded when the choice count exceeds cap and
// PreconditionViolated if the survivor check fails.
std::vector<Section> enumerate_sections(const ContextPoset& P, int c, long cap = 10000);

}  // namespace qlogic

#endif

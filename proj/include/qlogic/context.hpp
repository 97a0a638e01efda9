#ifndef QLOGIC_CONTEXT_HPP
#define QLOGIC_CONTEXT_HPP

#include <string>
#include <vector>

#include "qlogic/linalg.hpp"

namespace qlogic {

// A context: partition of unity in M_n(C), i.e. an abelian subalgebra given
// by its minimal projections. The atoms double as the points of the
// context's Gelfand spectrum. Atoms are kept in canonical order (sorted by
// rounded trace, then by rounded entries), which makes equality and poset
// deduplication deterministic.
struct Context {
  std::vector<Mat> atoms;
  std::string label;

  int dim() const { return atoms.empty() ? 0 : static_cast<int>(atoms[0].rows()); }
  int natoms() const { return static_cast<int>(atoms.size()); }

  // Sum of the selected atoms.
  Mat proj_of(const std::vector<int>& atom_idxs) const;

  // Sum of c_i * q_i; the general element of the context's algebra.
  Mat element(const std::vector<double>& coeffs) const;

  // True when a is diagonal over the atoms: ||a - sum_i beta_i q_i|| <= tol
  // with beta_i the per-atom mean.
  bool contains(const Mat& a) const;

  // The atom coefficients of a member operator (per-atom means).
  std::vector<double> coefficients(const Mat& a) const;
};

// Canonical sort key of an atom: trace then entries, all rounded to 6
// decimals.
std::vector<double> atom_key(const Mat& q);

// Lexicographic comparison of whole contexts: atom count first, then atom
// keys. Total order on canonical forms; used for poset ordering.
bool context_before(const Context& a, const Context& b);

// Equality on canonical forms: sorted atom lists match entrywise within
// tols().ord.
bool context_equal(const Context& a, const Context& b);

// Validates atoms (projections, pairwise orthogonal, no zero atom, summing
// to the identity) and sorts them canonically.
Context make_context(std::vector<Mat> atoms, std::string label = "");

// The bottom context C.1 of M_n: single atom, the identity.
Context bottom_context(int n);

// Smallest partition-of-unity context containing every operator of a
// pairwise commuting family: atoms are the minimal nonzero products of
// eigenprojections (joint eigenspaces). Throws NonCommuting with the
// offending pair's commutator norm.
Context context_from_commuting(const std::vector<Mat>& ops, std::string label = "");

// D <= C in the refinement order: every atom of D is a sum of atoms of C.
bool context_leq(const Context& D, const Context& C);

// One point of a context's spectrum. Holds its own copy of the context, so
// points are freely shareable values.
struct SpectrumPoint {
  Context context;
  int atom_index = 0;

  const Mat& atom() const { return context.atoms[atom_index]; }
};

// lambda |-> lambda|_D, the restriction of the functional: the unique atom
// of D dominating lambda's atom. Throws NotComparable unless D <= C.
SpectrumPoint restrict_point(const SpectrumPoint& lam, const Context& D);

// lambda(a) for a in lambda's context: tr(q a)/tr(q). Throws NotInContext
// when a does not act as a scalar on the atom.
double eval_point(const SpectrumPoint& lam, const Mat& a);

}  // namespace qlogic

#endif

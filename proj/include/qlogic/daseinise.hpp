#ifndef QLOGIC_DASEINISE_HPP
#define QLOGIC_DASEINISE_HPP

#include <utility>

#include "qlogic/context.hpp"
#include "qlogic/linalg.hpp"

namespace qlogic {

// Best approximation of p from above inside C: the least projection of C
// dominating p. Sum of the atoms that p touches.
ProjectionOp daseinise_proj_outer(const ProjectionOp& p, const Context& C);

// Best approximation from below: the largest projection of C under p. Sum of
// the atoms contained in p.
ProjectionOp daseinise_proj_inner(const ProjectionOp& p, const Context& C);

// Spectral-order meet of {b in C : b >=_s a}, computed in closed form: each
// atom gets the smallest eigenvalue x of a whose spectral projection
// chi_(-inf,x](a) already covers the atom.
HermitianOp daseinise_sa_outer(const HermitianOp& a, const Context& C);

// Spectral-order join of {b in C : b <=_s a}: each atom gets the largest
// eigenvalue x of a with the atom under 1 - chi_(-inf,x)(a).
HermitianOp daseinise_sa_inner(const HermitianOp& a, const Context& C);

// Galois adjunction of daseinisation with the inclusion of C. For b an
// element of C, returns the truth of
//   first:  b <=_s inner(a, C)  iff  b <=_s a
//   second: outer(a, C) <=_s b  iff  a <=_s b
// Throws NotInContext when b is not diagonal in C's atoms.
std::pair<bool, bool> check_adjunction(const HermitianOp& a, const HermitianOp& b_in_C,
                                       const Context& C);

}  // namespace qlogic

#endif

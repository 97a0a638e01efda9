#include "qlogic/daseinise.hpp"

#include <vector>

#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

ProjectionOp daseinise_proj_outer(const ProjectionOp& p, const Context& C) {
  check_projection(p);
  if (p.rows() != C.dim()) throw BadInput("projection dimension does not match context");
  Mat out = zeros(C.dim());
  for (const Mat& q : C.atoms)
    if (norm_inf(q * p) > tols().ord) out += q;
  return out;
}

ProjectionOp daseinise_proj_inner(const ProjectionOp& p, const Context& C) {
  check_projection(p);
  if (p.rows() != C.dim()) throw BadInput("projection dimension does not match context");
  Mat out = zeros(C.dim());
  for (const Mat& q : C.atoms)
    if (proj_leq(q, p)) out += q;
  return out;
}

HermitianOp daseinise_sa_outer(const HermitianOp& a, const Context& C) {
  check_hermitian(a);
  if (a.rows() != C.dim()) throw BadInput("operator dimension does not match context");
  auto eig = eigendecompose(a);
  Mat out = zeros(C.dim());
  for (const Mat& q : C.atoms) {
    // Ascending eigenvalues: the first x with q <= chi_(-inf,x](a) is the
    // minimum. x = max spec(a) always qualifies, so t is always found.
    double t = eig.back().value;
    Mat resolution = zeros(C.dim());
    for (const auto& ep : eig) {
      resolution += ep.projection;
      if (proj_leq(q, resolution)) { t = ep.value; break; }
    }
    out += t * q;
  }
  return out;
}

HermitianOp daseinise_sa_inner(const HermitianOp& a, const Context& C) {
  check_hermitian(a);
  if (a.rows() != C.dim()) throw BadInput("operator dimension does not match context");
  auto eig = eigendecompose(a);
  Mat out = zeros(C.dim());
  for (const Mat& q : C.atoms) {
    // Descending scan: the first x with q <= 1 - chi_(-inf,x)(a) is the
    // maximum. x = min spec(a) gives 1 - 0 = 1, so s is always found.
    double s = eig.front().value;
    Mat tail = zeros(C.dim());  // chi_[x,inf)(a) accumulated from the top
    for (auto it = eig.rbegin(); it != eig.rend(); ++it) {
      tail += it->projection;
      if (proj_leq(q, tail)) { s = it->value; break; }
    }
    out += s * q;
  }
  return out;
}

std::pair<bool, bool> check_adjunction(const HermitianOp& a, const HermitianOp& b_in_C,
                                       const Context& C) {
  check_hermitian(a);
  check_hermitian(b_in_C);
  if (!C.contains(b_in_C)) throw NotInContext("adjunction test operand is not in the context");
  Mat inner = daseinise_sa_inner(a, C);
  Mat outer = daseinise_sa_outer(a, C);
  bool first = spectral_leq(b_in_C, inner) == spectral_leq(b_in_C, a);
  bool second = spectral_leq(outer, b_in_C) == spectral_leq(a, b_in_C);
  return {first, second};
}

}  // namespace qlogic

#ifndef QLOGIC_LINALG_HPP
#define QLOGIC_LINALG_HPP

#include <vector>

#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

// Operators are plain matrices; the aliases mark which invariant a signature
// expects. check_hermitian / check_projection are the validators behind them.
using HermitianOp = Mat;
using ProjectionOp = Mat;

void check_hermitian(const Mat& a);    // throws NonHermitian
void check_projection(const Mat& p);   // throws NonProjection

bool is_hermitian(const Mat& a);
bool is_projection(const Mat& p);

// A finite union of real intervals with open/closed endpoints. Unbounded
// endpoints are +-infinity. Normal form: pieces pairwise disjoint, sorted
// ascending, overlaps and touching closures merged.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
};

struct BorelSet {
  std::vector<Interval> pieces;

  static BorelSet real_line();
  static BorelSet empty();
  // Single piece; infinite endpoints get their closed flag cleared.
  static BorelSet interval(double lo, double hi, bool lo_closed = false,
                           bool hi_closed = false);

  BorelSet unite(const BorelSet& other) const;

  // Membership without snapping.
  bool contains(double x) const;

  // Membership with the endpoint-snap rule: a value within tol of an
  // endpoint is moved onto it, then the endpoint's flag decides. Makes
  // spectral projections reproducible under floating-point jitter.
  bool contains_snapped(double x, double tol) const;
};

// Normalizes in place: sort, drop empty pieces, merge overlaps.
BorelSet normalize(BorelSet s);

struct EigPair {
  double value;     // cluster representative (mean)
  Mat projection;   // orthogonal projection onto the cluster eigenspace
};

// Eigenvalue clusters of a hermitian operator, ascending. Values are distinct
// after clustering within tols().eig * norm_scale(a); projections are
// mutually orthogonal and sum to the identity.
std::vector<EigPair> eigendecompose(const Mat& a);

// chi_Delta(a): sum of eigenprojections whose (snapped) eigenvalue lies in
// delta.
Mat spectral_projection(const Mat& a, const BorelSet& delta);

// e^a_x = chi_{(-inf, x]}(a); the right-continuous spectral step family.
Mat spectral_resolution(const Mat& a, double x);

// chi_{(-inf, x)}(a); the left limit of the step family at x.
Mat spectral_resolution_below(const Mat& a, double x);

// Range inclusion p <= q, decided as ||q p - p|| <= tols().ord.
bool proj_leq(const Mat& p, const Mat& q);

// Spectral order a <=_s b: e^a_x >= e^b_x for every x. Both resolutions are
// right-continuous step functions, so deciding on the merged eigenvalue set
// is exact.
bool spectral_leq(const Mat& a, const Mat& b);

}  // namespace qlogic

#endif

#include "qlogic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace qlogic {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Tolerances& tols() {
  static Tolerances t;
  return t;
}

void apply_env_tolerance() {
  const char* env = std::getenv("QLOGIC_TOLERANCE");
  if (!env || !*env) return;
  char* end = nullptr;
  double t = std::strtod(env, &end);
  if (end == env || t <= 0.0) throw BadInput("QLOGIC_TOLERANCE must be a positive number");
  Tolerances& g = tols();
  g.eig = g.ord = g.recon = t;
  g.herm = g.proj = g.truth = t / 10.0;
}

bool is_hermitian(const Mat& a) {
  return a.rows() == a.cols() && norm_inf(a - a.adjoint()) <= tols().herm;
}

void check_hermitian(const Mat& a) {
  if (a.rows() != a.cols()) throw NonHermitian("matrix is not square");
  double defect = norm_inf(a - a.adjoint());
  if (defect > tols().herm)
    throw NonHermitian("hermiticity defect " + std::to_string(defect));
}

bool is_projection(const Mat& p) {
  return is_hermitian(p) && norm_inf(p * p - p) <= tols().proj;
}

void check_projection(const Mat& p) {
  check_hermitian(p);
  double defect = norm_inf(p * p - p);
  if (defect > tols().proj)
    throw NonProjection("idempotency defect " + std::to_string(defect));
}

BorelSet BorelSet::real_line() { return interval(-kInf, kInf); }

BorelSet BorelSet::empty() { return BorelSet{}; }

BorelSet BorelSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  Interval iv{lo, hi, lo_closed, hi_closed};
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
  BorelSet s;
  s.pieces.push_back(iv);
  return normalize(s);
}

BorelSet BorelSet::unite(const BorelSet& other) const {
  BorelSet s;
  s.pieces = pieces;
  s.pieces.insert(s.pieces.end(), other.pieces.begin(), other.pieces.end());
  return normalize(s);
}

namespace {

bool piece_empty(const Interval& iv) {
  if (iv.lo > iv.hi) return true;
  if (iv.lo == iv.hi) return !(iv.lo_closed && iv.hi_closed) || std::isinf(iv.lo);
  return false;
}

// True when two sorted pieces overlap or touch with at least one closed end,
// so their union is again an interval.
bool merged_by(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo > a.hi) return false;
  return a.hi_closed || b.lo_closed;
}

}  // namespace

BorelSet normalize(BorelSet s) {
  std::vector<Interval> in;
  for (const Interval& iv : s.pieces)
    if (!piece_empty(iv)) in.push_back(iv);
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const Interval& iv : in) {
    if (!out.empty() && merged_by(out.back(), iv)) {
      Interval& last = out.back();
      if (iv.hi > last.hi) {
        last.hi = iv.hi;
        last.hi_closed = iv.hi_closed;
      } else if (iv.hi == last.hi) {
        last.hi_closed = last.hi_closed || iv.hi_closed;
      }
    } else {
      out.push_back(iv);
    }
  }
  s.pieces = std::move(out);
  return s;
}

bool BorelSet::contains(double x) const {
  for (const Interval& iv : pieces) {
    bool above = iv.lo_closed ? x >= iv.lo : x > iv.lo;
    bool below = iv.hi_closed ? x <= iv.hi : x < iv.hi;
    if (above && below) return true;
  }
  return false;
}

bool BorelSet::contains_snapped(double x, double tol) const {
  for (const Interval& iv : pieces) {
    if (std::isfinite(iv.lo) && std::abs(x - iv.lo) <= tol) {
      if (iv.lo_closed) return true;
      continue;  // snapped onto an open lower endpoint: outside this piece
    }
    if (std::isfinite(iv.hi) && std::abs(x - iv.hi) <= tol) {
      if (iv.hi_closed) return true;
      continue;
    }
    bool above = iv.lo_closed ? x >= iv.lo : x > iv.lo;
    bool below = iv.hi_closed ? x <= iv.hi : x < iv.hi;
    if (above && below) return true;
  }
  return false;
}

std::vector<EigPair> eigendecompose(const Mat& a) {
  check_hermitian(a);
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a));
  if (es.info() != Eigen::Success) throw NonHermitian("eigensolver failed");
  const auto& vals = es.eigenvalues();
  const Mat& vecs = es.eigenvectors();
  const int n = static_cast<int>(a.rows());
  const double tol = tols().eig * norm_scale(a);

  std::vector<EigPair> out;
  int i = 0;
  while (i < n) {
    int j = i;
    // Cluster greedily along the sorted values; clusters are built per
    // eigenvalue cluster, never per eigenvector, so degenerate spectra give
    // basis-independent projections.
    while (j + 1 < n && vals(j + 1) - vals(j) <= tol) ++j;
    double mean = 0.0;
    Mat p = zeros(n);
    for (int k = i; k <= j; ++k) {
      mean += vals(k);
      p += vecs.col(k) * vecs.col(k).adjoint();
    }
    mean /= (j - i + 1);
    out.push_back({mean, hermitize(p)});
    i = j + 1;
  }
  return out;
}

Mat spectral_projection(const Mat& a, const BorelSet& delta) {
  const double tol = tols().eig * norm_scale(a);
  Mat p = zeros(static_cast<int>(a.rows()));
  for (const EigPair& e : eigendecompose(a))
    if (delta.contains_snapped(e.value, tol)) p += e.projection;
  return p;
}

Mat spectral_resolution(const Mat& a, double x) {
  const double tol = tols().eig * norm_scale(a);
  Mat p = zeros(static_cast<int>(a.rows()));
  for (const EigPair& e : eigendecompose(a))
    if (e.value <= x || std::abs(e.value - x) <= tol) p += e.projection;
  return p;
}

Mat spectral_resolution_below(const Mat& a, double x) {
  const double tol = tols().eig * norm_scale(a);
  Mat p = zeros(static_cast<int>(a.rows()));
  for (const EigPair& e : eigendecompose(a))
    if (e.value < x && std::abs(e.value - x) > tol) p += e.projection;
  return p;
}

bool proj_leq(const Mat& p, const Mat& q) {
  check_projection(p);
  check_projection(q);
  return norm_inf(q * p - p) <= tols().ord;
}

bool spectral_leq(const Mat& a, const Mat& b) {
  check_hermitian(a);
  check_hermitian(b);
  if (a.rows() != b.rows()) throw NotComparable("dimension mismatch");
  std::vector<double> xs;
  for (const EigPair& e : eigendecompose(a)) xs.push_back(e.value);
  for (const EigPair& e : eigendecompose(b)) xs.push_back(e.value);
  for (double x : xs)
    if (!proj_leq(spectral_resolution(b, x), spectral_resolution(a, x))) return false;
  return true;
}

}  // namespace qlogic

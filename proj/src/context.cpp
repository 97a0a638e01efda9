#include "qlogic/context.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qlogic {

namespace {

double round6(double x) {
  double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // normalize -0.0
}

}  // namespace

Mat Context::proj_of(const std::vector<int>& atom_idxs) const {
  Mat p = zeros(dim());
  for (int i : atom_idxs) p += atoms.at(static_cast<size_t>(i));
  return p;
}

Mat Context::element(const std::vector<double>& coeffs) const {
  Mat a = zeros(dim());
  for (size_t i = 0; i < atoms.size(); ++i) a += coeffs.at(i) * atoms[i];
  return a;
}

std::vector<double> Context::coefficients(const Mat& a) const {
  std::vector<double> c;
  c.reserve(atoms.size());
  for (const Mat& q : atoms) c.push_back((q * a).trace().real() / real_trace(q));
  return c;
}

bool Context::contains(const Mat& a) const {
  return norm_inf(a - element(coefficients(a))) <= tols().ord * norm_scale(a);
}

std::vector<double> atom_key(const Mat& q) {
  std::vector<double> key;
  key.reserve(static_cast<size_t>(q.size()) * 2 + 1);
  key.push_back(round6(q.trace().real()));
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) {
      key.push_back(round6(q(i, j).real()));
      key.push_back(round6(q(i, j).imag()));
    }
  return key;
}

bool context_before(const Context& a, const Context& b) {
  if (a.natoms() != b.natoms()) return a.natoms() < b.natoms();
  for (int i = 0; i < a.natoms(); ++i) {
    auto ka = atom_key(a.atoms[i]);
    auto kb = atom_key(b.atoms[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

bool context_equal(const Context& a, const Context& b) {
  if (a.dim() != b.dim() || a.natoms() != b.natoms()) return false;
  for (int i = 0; i < a.natoms(); ++i)
    if (norm_inf(a.atoms[i] - b.atoms[i]) > tols().ord) return false;
  return true;
}

Context make_context(std::vector<Mat> atoms, std::string label) {
  if (atoms.empty()) throw BadInput("context needs at least one atom");
  const int n = static_cast<int>(atoms[0].rows());
  Mat sum = zeros(n);
  for (const Mat& q : atoms) {
    check_projection(q);
    if (q.rows() != n) throw BadInput("context atoms must share one dimension");
    if (norm_inf(q) <= tols().proj) throw BadInput("context contains a zero atom");
    sum += q;
  }
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (norm_inf(atoms[i] * atoms[j]) > tols().ord)
        throw BadInput("context atoms are not orthogonal");
  if (norm_inf(sum - identity(n)) > tols().ord)
    throw BadInput("context atoms do not sum to the identity");
  std::sort(atoms.begin(), atoms.end(),
            [](const Mat& a, const Mat& b) { return atom_key(a) < atom_key(b); });
  Context c;
  c.atoms = std::move(atoms);
  c.label = std::move(label);
  return c;
}

Context bottom_context(int n) {
  return make_context({identity(n)}, "C1");
}

Context context_from_commuting(const std::vector<Mat>& ops, std::string label) {
  if (ops.empty()) throw BadInput("need at least one operator");
  const int n = static_cast<int>(ops[0].rows());
  for (const Mat& a : ops) {
    check_hermitian(a);
    if (a.rows() != n) throw BadInput("operators must share one dimension");
  }
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j) {
      double c = norm_inf(commutator(ops[i], ops[j]));
      if (c > tols().ord * norm_scale(ops[i]) * norm_scale(ops[j]))
        throw NonCommuting("commutator norm " + std::to_string(c) + " between operators " +
                           std::to_string(i) + " and " + std::to_string(j));
    }

  // Refine the trivial partition by each operator's eigenprojections. All
  // the projections involved commute, so products are again projections;
  // each product is rounded back onto an exact idempotent to stop error
  // accumulation.
  std::vector<Mat> atoms{identity(n)};
  for (const Mat& a : ops) {
    std::vector<Mat> next;
    for (const Mat& q : atoms)
      for (const EigPair& e : eigendecompose(a)) {
        Mat r = hermitize(q * e.projection);
        if (norm_inf(r) <= 1e-6) continue;
        Mat p = spectral_projection(r, BorelSet::interval(0.5, 1.5, false, true));
        if (norm_inf(p) > tols().proj) next.push_back(p);
      }
    atoms = std::move(next);
  }
  return make_context(std::move(atoms), std::move(label));
}

bool context_leq(const Context& D, const Context& C) {
  if (D.dim() != C.dim()) return false;
  if (D.natoms() > C.natoms()) return false;
  for (const Mat& d : D.atoms) {
    Mat covered = zeros(C.dim());
    for (const Mat& q : C.atoms) {
      if (proj_leq(q, d)) {
        covered += q;
      } else if (norm_inf(q * d) > tols().ord) {
        return false;  // q neither under d nor orthogonal to it
      }
    }
    if (norm_inf(covered - d) > tols().ord) return false;
  }
  return true;
}

SpectrumPoint restrict_point(const SpectrumPoint& lam, const Context& D) {
  if (!context_leq(D, lam.context))
    throw NotComparable("restriction target is not a coarsening of the point's context");
  for (int i = 0; i < D.natoms(); ++i)
    if (proj_leq(lam.atom(), D.atoms[i])) return SpectrumPoint{D, i};
  throw NotComparable("no atom of the coarser context dominates the point");
}

double eval_point(const SpectrumPoint& lam, const Mat& a) {
  check_hermitian(a);
  const Mat& q = lam.atom();
  double beta = (q * a).trace().real() / real_trace(q);
  if (norm_inf(q * a - beta * q) > tols().ord * norm_scale(a))
    throw NotInContext("operator does not act as a scalar on the atom");
  return beta;
}

}  // namespace qlogic

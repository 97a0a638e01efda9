#ifndef QLOGIC_TESTS_SUPPORT_HPP
#define QLOGIC_TESTS_SUPPORT_HPP

#include <memory>

#include "qlogic/checks.hpp"
#include "qlogic/context.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/poset.hpp"

namespace qtest {

inline bool mat_eq(const qlogic::Mat& a, const qlogic::Mat& b, double tol = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() && qlogic::norm_inf(a - b) <= tol;
}

// Position of the atom equal to q, or -1. Tests locate atoms by value so
// they stay independent of the canonical atom order.
inline int atom_index(const qlogic::Context& c, const qlogic::Mat& q) {
  for (int i = 0; i < c.natoms(); ++i)
    if (mat_eq(c.atoms[static_cast<size_t>(i)], q)) return i;
  return -1;
}

inline qlogic::Mat diag2(double a, double b) {
  qlogic::Mat m = qlogic::zeros(2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline qlogic::Mat diag3(double a, double b, double c) {
  qlogic::Mat m = qlogic::zeros(3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// The three-context poset {trivial, eigencontext of z, eigencontext of x}.
inline std::shared_ptr<const qlogic::ContextPoset> poset_zx() {
  return std::make_shared<const qlogic::ContextPoset>(
      qlogic::build_poset({qlogic::context_z(), qlogic::context_x()}, true, true));
}

}  // namespace qtest

#endif

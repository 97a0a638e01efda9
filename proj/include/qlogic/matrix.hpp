#ifndef QLOGIC_MATRIX_HPP
#define QLOGIC_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>

namespace qlogic {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat identity(int n) { return Mat::Identity(n, n); }
inline Mat zeros(int n) { return Mat::Zero(n, n); }

// Entrywise max-modulus norm; all tolerance tests in this library are
// entrywise.
inline double norm_inf(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Scale factor used with the eig/recon tolerances. Frobenius dominates the
// spectral radius, which is all the scaling needs.
inline double norm_scale(const Mat& m) { return 1.0 + m.norm(); }

inline double real_trace(const Mat& m) { return m.trace().real(); }

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace qlogic

#endif

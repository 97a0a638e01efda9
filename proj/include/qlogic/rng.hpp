#ifndef QLOGIC_RNG_HPP
#define QLOGIC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qlogic/matrix.hpp"

namespace qlogic {

// Deterministic random source. Variates are derived from raw mt19937_64 bits
// by hand so identical seeds give identical streams on every platform;
// std::uniform_real_distribution and friends are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0,1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform index in [0,n). Modulo bias is below 1e-17 for the n used here.
  int index(int n) { return static_cast<int>(bits() % static_cast<std::uint64_t>(n)); }

  bool coin() { return (bits() & 1u) != 0; }

  double gauss() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Cplx cgauss() { return Cplx(gauss(), gauss()) * 0.7071067811865476; }

  Mat gaussian_matrix(int rows, int cols) {
    Mat g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = cgauss();
    return g;
  }

  Mat hermitian(int n, double scale = 1.0) {
    Mat g = gaussian_matrix(n, n);
    return scale * 0.5 * (g + Mat(g.adjoint()));
  }

  // Haar-ish unitary: QR of a Gaussian matrix with the phases of R's diagonal
  // absorbed, so the result does not depend on QR sign conventions.
  Mat unitary(int n) {
    Mat g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      Cplx d = r(j, j);
      double ad = std::abs(d);
      q.col(j) *= (ad > 1e-300) ? d / ad : Cplx(1, 0);
    }
    return q;
  }

  // Random projection of uniformly chosen rank in [0, n].
  Mat projection(int n) {
    int rank = index(n + 1);
    Mat u = unitary(n);
    Mat p = zeros(n);
    for (int i = 0; i < rank; ++i) p += u.col(i) * u.col(i).adjoint();
    return p;
  }

  // Density matrix, full rank unless a smaller rank is requested.
  Mat density(int n, int rank = 0) {
    if (rank <= 0) rank = n;
    Mat b = gaussian_matrix(n, rank);
    Mat rho = b * b.adjoint();
    return rho / rho.trace().real();
  }

  Vec pure_amplitudes(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = cgauss();
    return v / v.norm();
  }

  // Random partition of {0..k-1} as a restricted growth string.
  std::vector<int> partition_labels(int k) {
    std::vector<int> lab(k, 0);
    int used = 1;
    for (int i = 1; i < k; ++i) {
      lab[i] = index(used + 1);
      if (lab[i] == used) ++used;
    }
    return lab;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qlogic

#endif

#ifndef QLOGIC_TOLERANCES_HPP
#define QLOGIC_TOLERANCES_HPP

namespace qlogic {

// Global numeric tolerances. Matrices stay small (n <= ~8) and conditioning
// is benign, so absolute thresholds are enough. eig and recon are scaled by
// (1 + ||a||) at the point of use.
struct Tolerances {
  double herm = 1e-9;   // hermiticity defect
  double proj = 1e-9;   // idempotency defect
  double eig = 1e-8;    // eigenvalue clustering and endpoint snapping
  double ord = 1e-8;    // projection and spectral order tests
  double recon = 1e-8;  // spectral reconstruction
  double truth = 1e-9;  // valuation threshold comparisons
};

// The one mutable global of the library. Every operation reads it; nothing
// in the library writes it.
Tolerances& tols();

// Applies the QLOGIC_TOLERANCE environment override if present: value t sets
// eig = ord = recon = t and herm = proj = truth = t/10, preserving the
// default ratios. Called by the CLI at startup; the library itself never
// reads the environment.
void apply_env_tolerance();

}  // namespace qlogic

#endif

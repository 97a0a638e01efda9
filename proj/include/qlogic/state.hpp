#ifndef QLOGIC_STATE_HPP
#define QLOGIC_STATE_HPP

#include <utility>
#include <vector>

#include "qlogic/matrix.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/report.hpp"
#include "qlogic/rng.hpp"
#include "qlogic/subobject.hpp"

namespace qlogic {

// A density matrix: hermitian, positive semidefinite, unit trace (within
// tolerance; validated on construction).
struct State {
  Mat rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  double expect(const Mat& a) const { return real_trace(rho * a); }
};

State make_state(Mat rho);                              // validates
State pure_state(const std::vector<Cplx>& amplitudes);  // normalizes

// The number a state attaches to a subobject, unfolded over the stages the
// variant can see from a base stage: every coarser stage (contravariant) or
// every finer stage (covariant). Each entry is tr(rho * p(S at D)).
struct ValuationValue {
  Variant variant = Variant::contravariant;
  int base = -1;                               // poset position of the base stage
  std::vector<std::pair<int, double>> values;  // (stage, value), stages sorted

  double at(int stage) const;  // BadInput when the stage is not in the domain
};

ValuationValue valuation(const State& psi, const Subobject& S, int base);
ValuationValue valuation(const State& psi, const Subobject& S, const Context& base);

// The truth value of "psi makes S at least x true": all stages where
// tr(rho * p(S at C)) >= x - tol. Down-sieve for contravariant subobjects,
// up-sieve for covariant ones; the sieve property is asserted.
Sieve truth_sieve(const State& psi, const Subobject& S, double x);

// Randomized check that S -> valuation values behaves as a probability
// valuation stage by stage: monotone, strict (bottom to 0, top to 1),
// modular, and continuous along directed families (joins of finite chains).
CheckReport check_valuation_axioms(const State& psi, const ContextPoset& P, int trials,
                                   Rng& rng);

}  // namespace qlogic

#endif

#include "qlogic/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlogic/errors.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

State make_state(Mat rho) {
  check_hermitian(rho);
  double scale = norm_scale(rho);
  auto eig = eigendecompose(rho);
  if (eig.front().value < -tols().eig * scale)
    throw BadInput("state is not positive semidefinite, min eigenvalue " +
                   std::to_string(eig.front().value));
  double tr = real_trace(rho);
  if (std::abs(tr - 1.0) > tols().eig * scale)
    throw BadInput("state trace is " + std::to_string(tr) + ", expected 1");
  return State{std::move(rho)};
}

State pure_state(const std::vector<Cplx>& amplitudes) {
  int n = static_cast<int>(amplitudes.size());
  if (n == 0) throw BadInput("pure state needs at least one amplitude");
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = amplitudes[static_cast<size_t>(i)];
  double nrm = v.norm();
  if (nrm < 1e-12) throw BadInput("pure state amplitudes are all zero");
  v /= nrm;
  return State{v * v.adjoint()};
}

double ValuationValue::at(int stage) const {
  for (const auto& [d, val] : values)
    if (d == stage) return val;
  throw BadInput("stage is not in the valuation domain");
}

ValuationValue valuation(const State& psi, const Subobject& S, int base) {
  const ContextPoset& P = S.P();
  if (base < 0 || base >= P.size()) throw BadInput("valuation base stage out of range");
  if (psi.dim() != P.at(base).dim()) throw BadInput("state dimension does not match poset");
  ValuationValue v;
  v.variant = S.variant;
  v.base = base;
  std::vector<int> domain = (S.variant == Variant::contravariant) ? P.down_set(base)
                                                                  : P.up_set(base);
  for (int d : domain) v.values.emplace_back(d, psi.expect(subobject_projection(S, d)));
  return v;
}

ValuationValue valuation(const State& psi, const Subobject& S, const Context& base) {
  int c = S.P().find(base);
  if (c < 0) throw BadInput("valuation base context is not in the poset");
  return valuation(psi, S, c);
}

Sieve truth_sieve(const State& psi, const Subobject& S, double x) {
  const ContextPoset& P = S.P();
  Sieve s;
  s.direction = (S.variant == Variant::contravariant) ? Direction::down : Direction::up;
  for (int c = 0; c < P.size(); ++c)
    if (psi.expect(subobject_projection(S, c)) >= x - tols().truth) s.members.push_back(c);
  if (!sieve_valid(P, s))
    throw PreconditionViolated("truth values failed to form a sieve");
  return s;
}

CheckReport check_valuation_axioms(const State& psi, const ContextPoset& P, int trials,
                                   Rng& rng) {
  CheckReport r;
  r.name = "valuation-axioms";
  auto sp = std::make_shared<const ContextPoset>(P);
  double tol = tols().truth;
  auto v = [&](const Subobject& S, int c) { return psi.expect(subobject_projection(S, c)); };
  for (int t = 0; t < trials; ++t) {
    Variant var = (t % 2 == 0) ? Variant::contravariant : Variant::covariant;
    std::string tag = " (trial " + std::to_string(t) + ")";

    Subobject bot = bottom_subobject(sp, var);
    Subobject top = top_subobject(sp, var);
    Subobject S = random_subobject(sp, var, rng);
    Subobject T = random_subobject(sp, var, rng);
    Subobject meet = heyting_meet(S, T);
    Subobject join = heyting_join(S, T);

    for (int c = 0; c < P.size(); ++c) {
      r.check(std::abs(v(bot, c)) <= tol, "strictness at bottom subobject" + tag);
      r.check(std::abs(v(top, c) - 1.0) <= tol, "strictness at top subobject" + tag);
      r.check(v(meet, c) <= v(S, c) + tol && v(S, c) <= v(join, c) + tol,
              "monotonicity at " + P.at(c).label + tag);
      r.check(std::abs(v(S, c) + v(T, c) - v(meet, c) - v(join, c)) <= tol,
              "modularity at " + P.at(c).label + tag);
    }

    // Directed family: cumulative joins form a chain whose join is the last
    // link; its value must be the supremum of the family's values.
    Subobject c1 = random_subobject(sp, var, rng);
    Subobject c2 = heyting_join(c1, random_subobject(sp, var, rng));
    Subobject c3 = heyting_join(c2, random_subobject(sp, var, rng));
    for (int c = 0; c < P.size(); ++c) {
      double sup = std::max({v(c1, c), v(c2, c), v(c3, c)});
      r.check(std::abs(v(c3, c) - sup) <= tol, "chain continuity at " + P.at(c).label + tag);
    }
  }
  return r;
}

}  // namespace qlogic

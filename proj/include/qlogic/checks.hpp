#ifndef QLOGIC_CHECKS_HPP
#define QLOGIC_CHECKS_HPP

#include <cstdint>
#include <vector>

#include "qlogic/context.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/report.hpp"
#include "qlogic/rng.hpp"

namespace qlogic {

// Brute-force oracles, kept deliberately independent of the closed forms in
// the daseinise module: projections by enumerating all 2^k lattice elements
// of the context, self-adjoints by enumerating every assignment of spectrum
// values to atoms and taking the spectral-order extremum of the admissible
// ones.
ProjectionOp oracle_proj_outer(const ProjectionOp& p, const Context& C);
ProjectionOp oracle_proj_inner(const ProjectionOp& p, const Context& C);
HermitianOp oracle_sa_outer(const HermitianOp& a, const Context& C);
HermitianOp oracle_sa_inner(const HermitianOp& a, const Context& C);

// The property suite. Each function draws its instances from the given
// generator, so a fixed seed reproduces a run exactly. Trial counts are the
// suite defaults; the acceptance gate pins them explicitly.
CheckReport check_proj_daseinisation_against_enumeration(Rng& rng, int trials = 200);
CheckReport check_sa_daseinisation_against_enumeration(Rng& rng, int trials = 100);
CheckReport check_galois_adjunction(Rng& rng, int trials = 200);
CheckReport check_proj_sa_agreement(Rng& rng, int trials = 200);
CheckReport check_monotone_chain(Rng& rng, int trials = 12);
CheckReport check_heyting_laws(Rng& rng, int trials = 100);
CheckReport check_sandwich_grid(Rng& rng);
CheckReport check_window_meet_strictness(Rng& rng);
CheckReport check_ujelly_random(Rng& rng, int trials = 100);
CheckReport check_valuation_axiom_suite(Rng& rng, int pairs = 100);
CheckReport check_truth_sieve_suite(Rng& rng, int trials = 100);
CheckReport check_forcing_characterizations(Rng& rng, int trials = 50);
CheckReport check_dynamics_suite(Rng& rng, int equivariance_trials = 100,
                                 int transform_trials = 50);
CheckReport check_continuity_and_sections(Rng& rng, int trials = 6);

// All fourteen, in order, sharing one generator.
std::vector<CheckReport> run_all_checks(std::uint64_t seed, int trials = 0);

// Shared instance helpers.
Mat pauli_z();
Mat pauli_x();
Context context_z();  // eigencontext of pauli_z
Context context_x();  // eigencontext of pauli_x

// A random context of M_n: a maximal one from a random hermitian's
// eigenvectors, optionally coarsened by a random partition of its atoms.
Context random_context(Rng& rng, int n, bool allow_coarse = true);

}  // namespace qlogic

#endif

#include "qlogic/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <string>

#include "qlogic/daseinise.hpp"
#include "qlogic/dynamics.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/state.hpp"
#include "qlogic/subobject.hpp"
#include "qlogic/tolerances.hpp"
#include "qlogic/valuemap.hpp"

namespace qlogic {

namespace {

void absorb(CheckReport& into, const CheckReport& from) {
  into.trials += from.trials;
  into.failures += from.failures;
  for (const auto& w : from.witnesses)
    if (into.witnesses.size() < 8) into.witnesses.push_back(from.name + ": " + w);
}

// Which atoms carry a projection that is a sum of atoms.
std::vector<int> atoms_of(const Context& C, const Mat& p) {
  std::vector<int> out;
  std::vector<double> coeff = C.coefficients(p);
  for (int i = 0; i < C.natoms(); ++i)
    if (coeff[static_cast<size_t>(i)] > 0.5) out.push_back(i);
  return out;
}

int cycle_dim(int t) { return 2 + t % 3; }

BorelSet random_interval(Rng& rng) {
  double lo = rng.uniform(-2.0, 2.0);
  double hi = lo + rng.uniform(0.1, 3.0);
  return BorelSet::interval(lo, hi, rng.coin(), rng.coin());
}

std::vector<int> random_permutation(Rng& rng, int k) {
  std::vector<int> p(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<size_t>(i)] = i;
  for (int i = k - 1; i > 0; --i) std::swap(p[static_cast<size_t>(i)], p[static_cast<size_t>(rng.index(i + 1))]);
  return p;
}

std::shared_ptr<const ContextPoset> make_p2() {
  return std::make_shared<const ContextPoset>(
      build_poset({context_z(), context_x()}, true, true));
}

}  // namespace

Mat pauli_z() {
  Mat a = zeros(2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  return a;
}

Mat pauli_x() {
  Mat a = zeros(2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  return a;
}

Context context_z() { return context_from_commuting({pauli_z()}, "Cz"); }
Context context_x() { return context_from_commuting({pauli_x()}, "Cx"); }

Context random_context(Rng& rng, int n, bool allow_coarse) {
  Context c = context_from_commuting({rng.hermitian(n)}, "R");
  if (allow_coarse && c.natoms() > 1 && rng.coin()) {
    std::vector<int> labels = rng.partition_labels(c.natoms());
    int nblocks = 1 + *std::max_element(labels.begin(), labels.end());
    std::vector<std::vector<int>> blocks(static_cast<size_t>(nblocks));
    for (int i = 0; i < c.natoms(); ++i)
      blocks[static_cast<size_t>(labels[static_cast<size_t>(i)])].push_back(i);
    c = coarsen(c, blocks, "R");
  }
  return c;
}

ProjectionOp oracle_proj_outer(const ProjectionOp& p, const Context& C) {
  int k = C.natoms();
  unsigned best = (1u << k) - 1;  // the top always dominates
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Mat q = zeros(C.dim());
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) q += C.atoms[static_cast<size_t>(i)];
    if (proj_leq(p, q)) best &= mask;
  }
  Mat out = zeros(C.dim());
  for (int i = 0; i < k; ++i)
    if (best & (1u << i)) out += C.atoms[static_cast<size_t>(i)];
  return out;
}

ProjectionOp oracle_proj_inner(const ProjectionOp& p, const Context& C) {
  int k = C.natoms();
  unsigned best = 0;  // the bottom is always below
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Mat q = zeros(C.dim());
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) q += C.atoms[static_cast<size_t>(i)];
    if (proj_leq(q, p)) best |= mask;
  }
  Mat out = zeros(C.dim());
  for (int i = 0; i < k; ++i)
    if (best & (1u << i)) out += C.atoms[static_cast<size_t>(i)];
  return out;
}

namespace {

// Enumerate every assignment of spectrum values to atoms, keep the ones on
// the wanted side of a in the spectral order, and take their extremum. The
// admissible set is closed under the entrywise extremum, so the running
// accumulator is the lattice meet/join itself.
HermitianOp oracle_sa(const HermitianOp& a, const Context& C, bool outer) {
  auto eig = eigendecompose(a);
  std::vector<double> xs;
  for (const auto& ep : eig) xs.push_back(ep.value);
  int k = C.natoms();
  int m = static_cast<int>(xs.size());

  std::vector<double> extremum;
  std::vector<int> idx(static_cast<size_t>(k), 0);
  while (true) {
    std::vector<double> t(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<size_t>(i)] = xs[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    Mat b = C.element(t);
    bool admissible = outer ? spectral_leq(a, b) : spectral_leq(b, a);
    if (admissible) {
      if (extremum.empty()) {
        extremum = t;
      } else {
        for (int i = 0; i < k; ++i) {
          double& e = extremum[static_cast<size_t>(i)];
          e = outer ? std::min(e, t[static_cast<size_t>(i)]) : std::max(e, t[static_cast<size_t>(i)]);
        }
      }
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] + 1 >= m) {
      idx[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
  }
  if (extremum.empty()) throw PreconditionViolated("no admissible spectrum assignment");
  return C.element(extremum);
}

}  // namespace

HermitianOp oracle_sa_outer(const HermitianOp& a, const Context& C) {
  return oracle_sa(a, C, true);
}

HermitianOp oracle_sa_inner(const HermitianOp& a, const Context& C) {
  return oracle_sa(a, C, false);
}

CheckReport check_proj_daseinisation_against_enumeration(Rng& rng, int trials) {
  CheckReport r;
  r.name = "projection-daseinisation-vs-enumeration";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    Context C = random_context(rng, n);
    Mat p = rng.projection(n);
    r.check(atoms_of(C, daseinise_proj_outer(p, C)) == atoms_of(C, oracle_proj_outer(p, C)),
            "outer sets differ at trial " + std::to_string(t));
    r.check(atoms_of(C, daseinise_proj_inner(p, C)) == atoms_of(C, oracle_proj_inner(p, C)),
            "inner sets differ at trial " + std::to_string(t));
  }
  return r;
}

CheckReport check_sa_daseinisation_against_enumeration(Rng& rng, int trials) {
  CheckReport r;
  r.name = "selfadjoint-daseinisation-vs-enumeration";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    Context C = random_context(rng, n);
    Mat a = rng.hermitian(n);
    double dev_o = norm_inf(daseinise_sa_outer(a, C) - oracle_sa_outer(a, C));
    double dev_i = norm_inf(daseinise_sa_inner(a, C) - oracle_sa_inner(a, C));
    r.check(dev_o <= 1e-8, "outer deviates by " + std::to_string(dev_o));
    r.check(dev_i <= 1e-8, "inner deviates by " + std::to_string(dev_i));
  }
  return r;
}

CheckReport check_galois_adjunction(Rng& rng, int trials) {
  CheckReport r;
  r.name = "galois-adjunction";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    Context C = random_context(rng, n);
    Mat a = rng.hermitian(n);
    Mat b;
    if (t % 3 == 0) {
      b = daseinise_sa_inner(a, C);  // unit of the adjunction
    } else {
      std::vector<double> coeffs;
      auto eig = eigendecompose(a);
      for (int i = 0; i < C.natoms(); ++i)
        coeffs.push_back(t % 3 == 1 ? rng.uniform(-2.0, 2.0)
                                    : eig[static_cast<size_t>(rng.index(static_cast<int>(eig.size())))].value);
      b = C.element(coeffs);
    }
    auto [first, second] = check_adjunction(a, b, C);
    r.check(first, "lower equivalence fails at trial " + std::to_string(t));
    r.check(second, "upper equivalence fails at trial " + std::to_string(t));
  }
  return r;
}

CheckReport check_proj_sa_agreement(Rng& rng, int trials) {
  CheckReport r;
  r.name = "projection-selfadjoint-agreement";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    Context C = random_context(rng, n);
    Mat p = rng.projection(n);
    double dev_o = norm_inf(daseinise_sa_outer(p, C) - daseinise_proj_outer(p, C));
    double dev_i = norm_inf(daseinise_sa_inner(p, C) - daseinise_proj_inner(p, C));
    r.check(dev_o <= 1e-8, "outer routes deviate by " + std::to_string(dev_o));
    r.check(dev_i <= 1e-8, "inner routes deviate by " + std::to_string(dev_i));

    // Complement duality, exact at the atom-set level.
    std::vector<int> inner_of_comp = atoms_of(C, daseinise_proj_inner(identity(n) - p, C));
    std::vector<int> outer_of_p = atoms_of(C, daseinise_proj_outer(p, C));
    std::vector<int> complement;
    for (int i = 0; i < C.natoms(); ++i)
      if (!std::binary_search(outer_of_p.begin(), outer_of_p.end(), i)) complement.push_back(i);
    r.check(inner_of_comp == complement, "complement duality fails at trial " + std::to_string(t));
  }
  return r;
}

CheckReport check_monotone_chain(Rng& rng, int trials) {
  CheckReport r;
  r.name = "monotone-daseinisation-chain";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    ContextPoset P = build_poset({random_context(rng, n, false), random_context(rng, n, false)},
                                 true, true);
    Mat a = rng.hermitian(n);
    std::vector<Mat> outer, inner;
    for (int c = 0; c < P.size(); ++c) {
      outer.push_back(daseinise_sa_outer(a, P.at(c)));
      inner.push_back(daseinise_sa_inner(a, P.at(c)));
    }
    for (int c = 0; c < P.size(); ++c) {
      r.check(spectral_leq(inner[static_cast<size_t>(c)], a), "inner above a at " + P.at(c).label);
      r.check(spectral_leq(a, outer[static_cast<size_t>(c)]), "outer below a at " + P.at(c).label);
      for (int d = 0; d < P.size(); ++d) {
        if (d == c || !P.leq(d, c)) continue;
        r.check(spectral_leq(inner[static_cast<size_t>(d)], inner[static_cast<size_t>(c)]),
                "inner not monotone from " + P.at(d).label + " to " + P.at(c).label);
        r.check(spectral_leq(outer[static_cast<size_t>(c)], outer[static_cast<size_t>(d)]),
                "outer not antitone from " + P.at(c).label + " to " + P.at(d).label);
      }
    }
  }
  return r;
}

CheckReport check_heyting_laws(Rng& rng, int trials) {
  CheckReport r;
  r.name = "heyting-laws";
  std::vector<std::shared_ptr<const ContextPoset>> posets;
  posets.push_back(make_p2());
  posets.push_back(std::make_shared<const ContextPoset>(build_poset(
      {random_context(rng, 3, false), random_context(rng, 3, false)}, true, true)));
  posets.push_back(std::make_shared<const ContextPoset>(
      build_poset({random_context(rng, 4, false)}, true, true)));

  bool strict_double_neg = false;
  for (const auto& sp : posets) {
    for (Variant v : {Variant::contravariant, Variant::covariant}) {
      Subobject bot = bottom_subobject(sp, v);
      Subobject top = top_subobject(sp, v);
      for (int t = 0; t < trials; ++t) {
        Subobject R = random_subobject(sp, v, rng);
        Subobject S = random_subobject(sp, v, rng);
        Subobject T = random_subobject(sp, v, rng);
        std::string tag = " (trial " + std::to_string(t) + ")";

        r.check(subobject_equal(heyting_meet(S, top), S), "meet with top" + tag);
        r.check(subobject_equal(heyting_join(S, bot), S), "join with bottom" + tag);
        r.check(subobject_equal(heyting_meet(R, heyting_join(S, T)),
                                heyting_join(heyting_meet(R, S), heyting_meet(R, T))),
                "distributivity" + tag);

        bool lhs = subobject_leq(heyting_meet(R, S), T);
        bool rhs = subobject_leq(R, heyting_impl(S, T));
        r.check(lhs == rhs, "residuation" + tag);

        Subobject n1 = heyting_neg(S);
        Subobject n2 = heyting_neg(n1);
        r.check(subobject_equal(heyting_meet(S, n1), bot), "meet with negation" + tag);
        r.check(subobject_leq(S, n2), "double negation bound" + tag);
        if (!subobject_equal(S, n2)) strict_double_neg = true;
      }
    }
  }
  r.check(strict_double_neg, "no properly intuitionistic double-negation instance found");
  return r;
}

CheckReport check_sandwich_grid(Rng& rng) {
  CheckReport r;
  r.name = "sandwich-grid";
  auto p2 = make_p2();
  Mat a3 = rng.hermitian(3);
  ContextPoset p3 = build_poset({context_from_commuting({a3}, "Ca"), random_context(rng, 3, false)},
                                true, true);

  struct Instance {
    Mat a;
    const ContextPoset* P;
  };
  std::vector<Instance> instances = {{pauli_z(), p2.get()}, {pauli_x(), p2.get()}, {a3, &p3}};

  for (const auto& inst : instances) {
    auto eig = eigendecompose(inst.a);
    std::set<double> grid;
    for (const auto& ep : eig) {
      grid.insert(ep.value);
      grid.insert(ep.value - 0.5);
      grid.insert(ep.value + 0.5);
    }
    std::vector<double> g(grid.begin(), grid.end());
    for (size_t i = 0; i < g.size(); ++i) {
      for (size_t j = i + 1; j < g.size(); ++j) {
        for (double eps : {0.01, 0.1, 1.0}) {
          for (Variant v : {Variant::contravariant, Variant::covariant})
            absorb(r, sandwich_check(inst.a, g[i], g[j], eps, *inst.P, v));
        }
      }
    }
  }
  return r;
}

CheckReport check_window_meet_strictness(Rng& rng) {
  CheckReport r;
  r.name = "window-vs-meet-strictness";
  bool strict_witnessed = false;
  double inf = std::numeric_limits<double>::infinity();

  auto run_instance = [&](const Mat& a, double s, double rr,
                          std::shared_ptr<const ContextPoset> sp, const std::string& tag) {
    for (Variant v : {Variant::contravariant, Variant::covariant}) {
      Subobject window = elementary_prop(a, BorelSet::interval(s, rr), sp, v);
      Subobject meet = heyting_meet(elementary_prop(a, BorelSet::interval(-inf, rr), sp, v),
                                    elementary_prop(a, BorelSet::interval(s, inf), sp, v));
      r.check(subobject_leq(window, meet), "window escapes the meet " + tag);
      if (v == Variant::covariant) {
        r.check(subobject_equal(window, meet), "covariant window differs from the meet " + tag);
      } else if (!subobject_equal(window, meet)) {
        strict_witnessed = true;
      }
    }
  };

  run_instance(pauli_z(), -0.5, 0.5, make_p2(), "(z window)");

  auto p3 = std::make_shared<const ContextPoset>(
      build_poset({random_context(rng, 3, false), random_context(rng, 3, false)}, true, true));
  for (int t = 0; t < 10; ++t) {
    Mat a = rng.hermitian(3);
    auto eig = eigendecompose(a);
    double s = eig[static_cast<size_t>(rng.index(static_cast<int>(eig.size())))].value +
               rng.uniform(-0.5, 0.0);
    double rr = s + rng.uniform(0.2, 2.0);
    run_instance(a, s, rr, p3, "(trial " + std::to_string(t) + ")");
  }
  r.check(strict_witnessed, "no strict contravariant window/meet gap found");
  return r;
}

CheckReport check_ujelly_random(Rng& rng, int trials) {
  CheckReport r;
  r.name = "lattice-recovery-of-point-values";
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    Context C = random_context(rng, n);
    Mat a = rng.hermitian(n);
    SpectrumPoint lam{C, rng.index(C.natoms())};
    auto [sup_ok, inf_ok] = check_ujelly(a, C, lam);
    r.check(sup_ok, "sup recovery fails at trial " + std::to_string(t));
    r.check(inf_ok, "inf recovery fails at trial " + std::to_string(t));
  }
  return r;
}

CheckReport check_valuation_axiom_suite(Rng& rng, int pairs) {
  CheckReport r;
  r.name = "valuation-axiom-suite";
  auto p2 = make_p2();
  ContextPoset p3 = build_poset({random_context(rng, 3, false), random_context(rng, 3, false)},
                                true, true);

  std::vector<std::pair<State, const ContextPoset*>> cases;
  cases.emplace_back(pure_state({Cplx(1, 0), Cplx(0, 0)}), p2.get());
  cases.emplace_back(make_state(0.5 * identity(2)), p2.get());
  cases.emplace_back(make_state(rng.density(2)), p2.get());
  cases.emplace_back(make_state(rng.density(3, 1)), &p3);
  cases.emplace_back(make_state(rng.density(3)), &p3);
  for (auto& [psi, P] : cases) absorb(r, check_valuation_axioms(psi, *P, pairs, rng));
  return r;
}

CheckReport check_truth_sieve_suite(Rng& rng, int trials) {
  CheckReport r;
  r.name = "truth-sieve-suite";
  auto p2 = make_p2();

  // Worked two-dimensional example, exact memberships.
  State psi0 = pure_state({Cplx(1, 0), Cplx(0, 0)});
  BorelSet delta = BorelSet::interval(0.5, 1.5);
  Sieve s_contra =
      truth_sieve(psi0, elementary_prop(pauli_z(), delta, p2, Variant::contravariant), 1.0);
  std::vector<int> all(static_cast<size_t>(p2->size()));
  for (int c = 0; c < p2->size(); ++c) all[static_cast<size_t>(c)] = c;
  r.check(s_contra.members == all, "plain-state sieve is not the whole poset");
  Sieve s_cov = truth_sieve(psi0, elementary_prop(pauli_z(), delta, p2, Variant::covariant), 1.0);
  r.check(s_cov.members == std::vector<int>{p2->find(context_z())},
          "certain cosieve is not exactly the z stage");

  std::vector<std::shared_ptr<const ContextPoset>> posets = {
      p2, std::make_shared<const ContextPoset>(build_poset(
              {random_context(rng, 3, false), random_context(rng, 3, false)}, true, true))};
  for (int t = 0; t < trials; ++t) {
    const auto& sp = posets[static_cast<size_t>(t % 2)];
    int n = sp->at(0).dim();
    State psi = make_state(rng.density(n));
    Mat a = rng.hermitian(n);
    BorelSet dd = random_interval(rng);
    double x = (t % 3 == 0) ? 1.0 : rng.uniform();
    for (Variant v : {Variant::contravariant, Variant::covariant}) {
      try {
        Sieve s = truth_sieve(psi, elementary_prop(a, dd, sp, v), x);
        bool dir_ok = (s.direction == ((v == Variant::contravariant) ? Direction::down
                                                                     : Direction::up));
        r.check(dir_ok && sieve_valid(*sp, s), "sieve closure fails at trial " + std::to_string(t));
      } catch (const Error& e) {
        r.fail(std::string("sieve construction threw: ") + e.what());
      }
    }
  }
  return r;
}

namespace {

// All 2^k projections of a context, paired with their atom masks.
std::vector<Mat> lattice_of(const Context& C) {
  int k = C.natoms();
  std::vector<Mat> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Mat p = zeros(C.dim());
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) p += C.atoms[static_cast<size_t>(i)];
    out.push_back(std::move(p));
  }
  return out;
}

bool certain(const State& psi, const Mat& p) { return psi.expect(p) >= 1.0 - tols().truth; }

// A spectral projection that is neither 0 nor 1, resampling the window.
Mat nontrivial_chi(Rng& rng, const Mat& a, BorelSet& delta_out) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    BorelSet delta = random_interval(rng);
    Mat chi = spectral_projection(a, delta);
    double tr = real_trace(chi);
    if (tr > 0.5 && tr < a.rows() - 0.5) {
      delta_out = delta;
      return chi;
    }
  }
  throw PreconditionViolated("could not sample a nontrivial spectral window");
}

}  // namespace

CheckReport check_forcing_characterizations(Rng& rng, int trials) {
  CheckReport r;
  r.name = "forcing-characterizations";

  for (int t = 0; t < trials; ++t) {
    int n = (t % 2 == 0) ? 3 : 2;
    auto sp = std::make_shared<const ContextPoset>(
        build_poset({random_context(rng, n, false)}, true, true));
    const ContextPoset& P = *sp;
    State psi = make_state(rng.density(n));
    Mat a1 = rng.hermitian(n), a2 = rng.hermitian(n);
    BorelSet d1 = random_interval(rng), d2 = random_interval(rng);
    Mat chi1 = spectral_projection(a1, d1), chi2 = spectral_projection(a2, d2);
    std::string tag = " (trial " + std::to_string(t) + ")";

    // Contravariant single / join / meet of elementary propositions.
    Subobject e1 = elementary_prop(a1, d1, sp, Variant::contravariant);
    Subobject e2 = elementary_prop(a2, d2, sp, Variant::contravariant);
    auto stage_sets = [&](const Subobject& S) {
      return truth_sieve(psi, S, 1.0).members;
    };
    std::vector<int> via_single = stage_sets(e1);
    std::vector<int> via_join = stage_sets(heyting_join(e1, e2));
    std::vector<int> via_meet = stage_sets(heyting_meet(e1, e2));
    std::vector<int> proj_single, proj_join, proj_meet;
    for (int c = 0; c < P.size(); ++c) {
      bool ok_single = true, ok_join = true, ok_meet = true;
      for (const Mat& p : lattice_of(P.at(c))) {
        bool over1 = proj_leq(chi1, p), over2 = proj_leq(chi2, p);
        if (over1 && !certain(psi, p)) ok_single = false;
        if (over1 && over2 && !certain(psi, p)) ok_join = false;
        if ((over1 || over2) && !certain(psi, p)) ok_meet = false;
      }
      if (ok_single) proj_single.push_back(c);
      if (ok_join) proj_join.push_back(c);
      if (ok_meet) proj_meet.push_back(c);
    }
    r.check(via_single == proj_single, "contravariant single characterization" + tag);
    r.check(via_join == proj_join, "contravariant join characterization" + tag);
    r.check(via_meet == proj_meet, "contravariant meet characterization" + tag);

    // Contravariant negation over the bottomless down-closure; stages with
    // two atoms are the only possible members.
    {
      auto spn = std::make_shared<const ContextPoset>(
          build_poset({random_context(rng, n, false)}, true, false));
      const ContextPoset& Pn = *spn;
      BorelSet dneg = BorelSet::empty();
      Mat an = rng.hermitian(n);
      Mat chin = nontrivial_chi(rng, an, dneg);
      Subobject neg = heyting_neg(elementary_prop(an, dneg, spn, Variant::contravariant));
      std::vector<int> via = truth_sieve(psi, neg, 1.0).members;
      std::vector<int> proj;
      for (int c = 0; c < Pn.size(); ++c) {
        const Context& C = Pn.at(c);
        if (C.natoms() != 2) continue;
        Mat supp = zeros(n);
        for (const Mat& q : C.atoms)
          if (norm_inf(q * chin) <= tols().ord) supp += q;
        if (certain(psi, supp)) proj.push_back(c);
      }
      r.check(via == proj, "contravariant negation characterization" + tag);
    }

    // Covariant single / meet; negation at the maximal stages.
    Subobject c1 = elementary_prop(a1, d1, sp, Variant::covariant);
    Subobject c2 = elementary_prop(a2, d2, sp, Variant::covariant);
    std::vector<int> cov_single = stage_sets(c1);
    std::vector<int> cov_meet = stage_sets(heyting_meet(c1, c2));
    std::vector<int> proj_cov_single, proj_cov_meet;
    for (int c = 0; c < P.size(); ++c) {
      bool ex_single = false, ex_meet = false;
      for (const Mat& p : lattice_of(P.at(c))) {
        if (norm_inf(p) <= tols().ord) continue;  // the zero projection says nothing
        if (!certain(psi, p)) continue;
        if (proj_leq(p, chi1)) ex_single = true;
        if (proj_leq(p, chi1) && proj_leq(p, chi2)) ex_meet = true;
      }
      if (ex_single) proj_cov_single.push_back(c);
      if (ex_meet) proj_cov_meet.push_back(c);
    }
    r.check(cov_single == proj_cov_single, "covariant single characterization" + tag);
    r.check(cov_meet == proj_cov_meet, "covariant meet characterization" + tag);

    {
      Subobject negc = heyting_neg(c1);
      std::vector<int> via = truth_sieve(psi, negc, 1.0).members;
      for (int c : P.maximal()) {
        bool in_via = std::binary_search(via.begin(), via.end(), c);
        bool all_over = true;
        for (const Mat& p : lattice_of(P.at(c)))
          if (proj_leq(identity(n) - chi1, p) && !certain(psi, p)) all_over = false;
        r.check(in_via == all_over, "covariant negation characterization" + tag);
      }
    }
  }
  return r;
}

CheckReport check_dynamics_suite(Rng& rng, int equivariance_trials, int transform_trials) {
  CheckReport r;
  r.name = "dynamics-suite";

  for (int t = 0; t < equivariance_trials; ++t) {
    int n = cycle_dim(t);
    StarHom h = make_star_hom(n, 1, rng.unitary(n));
    absorb(r, check_equivariance(h, rng.hermitian(n), random_interval(rng),
                                 random_context(rng, n)));
  }

  for (int t = 0; t < transform_trials; ++t) {
    Variant v = (t % 2 == 0) ? Variant::contravariant : Variant::covariant;
    StarHom h{0, 1, Mat()};
    ContextPoset P;
    int n;
    if (t % 4 == 3) {
      // Involutive basis change on two dimensions: swaps the two maximal
      // stages of the poset.
      n = 2;
      Mat u(2, 2);
      double s = 1.0 / std::sqrt(2.0);
      u << s, s, s, -s;
      h = make_star_hom(2, 1, u);
      P = build_poset({context_z(), context_x()}, true, true);
    } else {
      // A unitary permuting the atoms of one maximal context fixes that
      // context, so its down-closure is closed under the induced map.
      n = cycle_dim(t);
      Context C0 = random_context(rng, n, false);
      std::vector<int> perm = random_permutation(rng, n);
      // Unit vectors spanning the rank-one atoms of the maximal context.
      std::vector<Vec> vecs;
      for (int j = 0; j < n; ++j) {
        Eigen::SelfAdjointEigenSolver<Mat> es(C0.atoms[static_cast<size_t>(j)]);
        vecs.push_back(es.eigenvectors().col(n - 1));  // eigenvalue 1
      }
      Mat u = Mat::Zero(n, n);
      for (int j = 0; j < n; ++j) {
        Cplx phase = std::exp(Cplx(0.0, rng.uniform(0.0, 6.283185307179586)));
        u += phase * vecs[static_cast<size_t>(perm[static_cast<size_t>(j)])] *
             vecs[static_cast<size_t>(j)].adjoint();
      }
      h = make_star_hom(n, 1, u);
      P = build_poset({C0}, true, true);
    }
    State psi = make_state(rng.density(n));
    Mat a = rng.hermitian(n);
    BorelSet delta = random_interval(rng);
    TransformedTruth out = transform_truth(h, psi, a, delta, P, v);
    r.check(out.equal_under_map, "transported sieves disagree at trial " + std::to_string(t));
  }
  return r;
}

CheckReport check_continuity_and_sections(Rng& rng, int trials) {
  CheckReport r;
  r.name = "continuity-and-sections";
  std::vector<ContextPoset> posets;
  posets.push_back(build_poset({context_z(), context_x()}, true, true));
  for (int t = 0; t < trials; ++t) {
    int n = cycle_dim(t);
    if (n == 4) {
      posets.push_back(build_poset({random_context(rng, 4, false)}, true, true));
    } else {
      posets.push_back(build_poset({random_context(rng, n, false), random_context(rng, n, false)},
                                   true, true));
    }
  }

  for (const auto& P : posets) {
    int n = P.at(0).dim();
    Mat a = (n == 2) ? pauli_z() : rng.hermitian(n);
    for (Variant v : {Variant::contravariant, Variant::covariant})
      absorb(r, check_continuity(a, P, v));
    if (n > 2) absorb(r, check_continuity(rng.hermitian(n), P, Variant::contravariant));

    for (int c = 0; c < P.size(); ++c) {
      long count = 1;
      bool small = true;
      for (int d : P.down_set(c)) {
        count *= P.at(d).natoms();
        if (count > 10000) { small = false; break; }
      }
      if (!small) continue;
      auto sections = enumerate_sections(P, c, 10000);
      r.check(static_cast<int>(sections.size()) == P.at(c).natoms(),
              "section count differs from the atom count at " + P.at(c).label);
    }
  }
  return r;
}

std::vector<CheckReport> run_all_checks(std::uint64_t seed, int trials) {
  Rng rng(seed);
  int t1 = trials > 0 ? trials : 200;
  int t2 = trials > 0 ? trials : 100;
  int t3 = trials > 0 ? trials : 200;
  int t4 = trials > 0 ? trials : 200;
  int t5 = trials > 0 ? std::max(2, trials / 16) : 12;
  int t6 = trials > 0 ? trials : 100;
  int t9 = trials > 0 ? trials : 100;
  int t10 = trials > 0 ? trials : 100;
  int t11 = trials > 0 ? trials : 100;
  int t12 = trials > 0 ? std::max(2, trials / 4) : 50;
  int t13a = trials > 0 ? trials : 100;
  int t13b = trials > 0 ? std::max(2, trials / 4) : 50;
  int t14 = trials > 0 ? std::max(2, trials / 32) : 6;

  std::vector<CheckReport> out;
  out.push_back(check_proj_daseinisation_against_enumeration(rng, t1));
  out.push_back(check_sa_daseinisation_against_enumeration(rng, t2));
  out.push_back(check_galois_adjunction(rng, t3));
  out.push_back(check_proj_sa_agreement(rng, t4));
  out.push_back(check_monotone_chain(rng, t5));
  out.push_back(check_heyting_laws(rng, t6));
  out.push_back(check_sandwich_grid(rng));
  out.push_back(check_window_meet_strictness(rng));
  out.push_back(check_ujelly_random(rng, t9));
  out.push_back(check_valuation_axiom_suite(rng, t10));
  out.push_back(check_truth_sieve_suite(rng, t11));
  out.push_back(check_forcing_characterizations(rng, t12));
  out.push_back(check_dynamics_suite(rng, t13a, t13b));
  out.push_back(check_continuity_and_sections(rng, t14));
  return out;
}

}  // namespace qlogic

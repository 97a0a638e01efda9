#include "qlogic/subobject.hpp"

#include <algorithm>
#include <set>

#include "qlogic/daseinise.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

const ContextPoset& Subobject::P() const {
  if (!poset) throw BadInput("subobject has no poset attached");
  return *poset;
}

namespace {

bool same_poset(const ContextPoset& a, const ContextPoset& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (!context_equal(a.at(i), b.at(i))) return false;
  return true;
}

void check_pair(const Subobject& S, const Subobject& T) {
  if (S.variant != T.variant) throw VariantMismatch("subobject variants differ");
  if (!same_poset(S.P(), T.P())) throw VariantMismatch("subobjects live over different posets");
}

std::vector<int> all_atoms(const Context& c) {
  std::vector<int> v(static_cast<size_t>(c.natoms()));
  for (int i = 0; i < c.natoms(); ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

bool member(const std::vector<int>& sorted, int i) {
  return std::binary_search(sorted.begin(), sorted.end(), i);
}

Subobject shell(std::shared_ptr<const ContextPoset> p, Variant v) {
  Subobject s;
  s.variant = v;
  s.poset = std::move(p);
  s.family.resize(static_cast<size_t>(s.P().size()));
  return s;
}

}  // namespace

Subobject top_subobject(std::shared_ptr<const ContextPoset> p, Variant v) {
  Subobject s = shell(std::move(p), v);
  for (int c = 0; c < s.P().size(); ++c)
    s.family[static_cast<size_t>(c)] = all_atoms(s.P().at(c));
  return s;
}

Subobject bottom_subobject(std::shared_ptr<const ContextPoset> p, Variant v) {
  return shell(std::move(p), v);
}

Subobject elementary_prop(const HermitianOp& a, const BorelSet& delta,
                          std::shared_ptr<const ContextPoset> p, Variant v) {
  check_hermitian(a);
  Subobject s = shell(std::move(p), v);
  Mat chi = spectral_projection(a, delta);
  for (int c = 0; c < s.P().size(); ++c) {
    const Context& ctx = s.P().at(c);
    if (ctx.dim() != a.rows()) throw BadInput("operator dimension does not match poset");
    for (int i = 0; i < ctx.natoms(); ++i) {
      const Mat& q = ctx.atoms[static_cast<size_t>(i)];
      bool in = (v == Variant::contravariant) ? norm_inf(q * chi) > tols().ord
                                              : proj_leq(q, chi);
      if (in) s.family[static_cast<size_t>(c)].push_back(i);
    }
  }
  return s;
}

Subobject heyting_meet(const Subobject& S, const Subobject& T) {
  check_pair(S, T);
  Subobject out = shell(S.poset, S.variant);
  for (size_t c = 0; c < S.family.size(); ++c)
    std::set_intersection(S.family[c].begin(), S.family[c].end(), T.family[c].begin(),
                          T.family[c].end(), std::back_inserter(out.family[c]));
  return out;
}

Subobject heyting_join(const Subobject& S, const Subobject& T) {
  check_pair(S, T);
  Subobject out = shell(S.poset, S.variant);
  for (size_t c = 0; c < S.family.size(); ++c)
    std::set_union(S.family[c].begin(), S.family[c].end(), T.family[c].begin(),
                   T.family[c].end(), std::back_inserter(out.family[c]));
  return out;
}

Subobject heyting_impl(const Subobject& S, const Subobject& T) {
  check_pair(S, T);
  const ContextPoset& P = S.P();
  if (S.variant == Variant::contravariant && !P.is_down_closed())
    throw PosetNotDownClosed("implication in the contravariant model needs a down-closed poset");
  Subobject out = shell(S.poset, S.variant);
  for (int c = 0; c < P.size(); ++c) {
    for (int i = 0; i < P.at(c).natoms(); ++i) {
      bool keep = true;
      if (S.variant == Variant::contravariant) {
        for (int d : P.down_set(c)) {
          int j = P.restrict_atom(c, d, i);
          if (member(S.family[static_cast<size_t>(d)], j) &&
              !member(T.family[static_cast<size_t>(d)], j)) {
            keep = false;
            break;
          }
        }
      } else {
        for (int e : P.up_set(c)) {
          for (int j = 0; j < P.at(e).natoms() && keep; ++j) {
            if (P.restrict_atom(e, c, j) != i) continue;  // not an extension of i
            if (member(S.family[static_cast<size_t>(e)], j) &&
                !member(T.family[static_cast<size_t>(e)], j))
              keep = false;
          }
          if (!keep) break;
        }
      }
      if (keep) out.family[static_cast<size_t>(c)].push_back(i);
    }
  }
  return out;
}

Subobject heyting_neg(const Subobject& S) {
  Subobject out = heyting_impl(S, bottom_subobject(S.poset, S.variant));
  if (S.variant == Variant::covariant) {
    // Independent projection route: q survives at C iff q is orthogonal to
    // the selected projection of every finer stage.
    const ContextPoset& P = S.P();
    for (int c = 0; c < P.size(); ++c) {
      std::vector<int> alt;
      for (int i = 0; i < P.at(c).natoms(); ++i) {
        const Mat& q = P.at(c).atoms[static_cast<size_t>(i)];
        bool ok = true;
        for (int e : P.up_set(c)) {
          Mat comp = identity(P.at(e).dim()) - subobject_projection(S, e);
          if (!proj_leq(q, comp)) { ok = false; break; }
        }
        if (ok) alt.push_back(i);
      }
      if (alt != out.family[static_cast<size_t>(c)])
        throw PreconditionViolated("negation routes disagree at stage " + P.at(c).label);
    }
  }
  return out;
}

bool validate_subobject(const Subobject& S) {
  const ContextPoset& P = S.P();
  if (S.family.size() != static_cast<size_t>(P.size())) return false;
  for (int c = 0; c < P.size(); ++c) {
    const auto& fc = S.family[static_cast<size_t>(c)];
    if (!std::is_sorted(fc.begin(), fc.end())) return false;
    for (int i : fc)
      if (i < 0 || i >= P.at(c).natoms()) return false;
    for (int d : P.down_set(c)) {
      if (d == c) continue;
      for (int i = 0; i < P.at(c).natoms(); ++i) {
        int j = P.restrict_atom(c, d, i);
        bool fine = member(fc, i);
        bool coarse = member(S.family[static_cast<size_t>(d)], j);
        if (S.variant == Variant::contravariant && fine && !coarse) return false;
        if (S.variant == Variant::covariant && coarse && !fine) return false;
      }
    }
  }
  return true;
}

ProjectionOp subobject_projection(const Subobject& S, int c) {
  const Context& ctx = S.P().at(c);
  Mat out = zeros(ctx.dim());
  for (int i : S.family.at(static_cast<size_t>(c))) out += ctx.atoms[static_cast<size_t>(i)];
  return out;
}

bool subobject_leq(const Subobject& S, const Subobject& T) {
  check_pair(S, T);
  for (size_t c = 0; c < S.family.size(); ++c)
    if (!std::includes(T.family[c].begin(), T.family[c].end(), S.family[c].begin(),
                       S.family[c].end()))
      return false;
  return true;
}

bool subobject_equal(const Subobject& S, const Subobject& T) {
  check_pair(S, T);
  return S.family == T.family;
}

Subobject random_subobject(std::shared_ptr<const ContextPoset> p, Variant v, Rng& rng) {
  Subobject s = shell(std::move(p), v);
  const ContextPoset& P = s.P();
  for (int c = 0; c < P.size(); ++c)
    for (int i = 0; i < P.at(c).natoms(); ++i)
      if (rng.coin()) s.family[static_cast<size_t>(c)].push_back(i);
  // Smallest valid enlargement: push seeds along the closure rule until the
  // family stabilizes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < P.size(); ++c) {
      for (int d : P.down_set(c)) {
        if (d == c) continue;
        for (int i = 0; i < P.at(c).natoms(); ++i) {
          int j = P.restrict_atom(c, d, i);
          if (s.variant == Variant::contravariant) {
            if (member(s.family[static_cast<size_t>(c)], i) &&
                !member(s.family[static_cast<size_t>(d)], j)) {
              s.family[static_cast<size_t>(d)].push_back(j);
              std::sort(s.family[static_cast<size_t>(d)].begin(),
                        s.family[static_cast<size_t>(d)].end());
              changed = true;
            }
          } else {
            if (member(s.family[static_cast<size_t>(d)], j) &&
                !member(s.family[static_cast<size_t>(c)], i)) {
              s.family[static_cast<size_t>(c)].push_back(i);
              std::sort(s.family[static_cast<size_t>(c)].begin(),
                        s.family[static_cast<size_t>(c)].end());
              changed = true;
            }
          }
        }
      }
    }
  }
  return s;
}

}  // namespace qlogic

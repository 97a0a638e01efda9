#include "qlogic/valuemap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "qlogic/daseinise.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/matrix.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

double MonotoneSection::at(int stage) const {
  for (const auto& [d, val] : values)
    if (d == stage) return val;
  throw BadInput("stage is not in the section domain");
}

namespace {

double point_value(const Mat& atom, const Mat& b) {
  return real_trace(atom * b) / real_trace(atom);
}

// Per-atom coefficients of the two daseinised operators at every stage.
struct DasTables {
  std::vector<std::vector<double>> outer, inner;
};

DasTables das_tables(const HermitianOp& a, const ContextPoset& P) {
  DasTables t;
  t.outer.resize(static_cast<size_t>(P.size()));
  t.inner.resize(static_cast<size_t>(P.size()));
  for (int d = 0; d < P.size(); ++d) {
    t.outer[static_cast<size_t>(d)] = P.at(d).coefficients(daseinise_sa_outer(a, P.at(d)));
    t.inner[static_cast<size_t>(d)] = P.at(d).coefficients(daseinise_sa_inner(a, P.at(d)));
  }
  return t;
}

std::vector<double> threshold_grid(const HermitianOp& a) {
  auto eig = eigendecompose(a);
  std::vector<double> xs;
  xs.push_back(eig.front().value - 1.0);
  for (size_t i = 0; i < eig.size(); ++i) {
    xs.push_back(eig[i].value);
    if (i + 1 < eig.size()) xs.push_back(0.5 * (eig[i].value + eig[i + 1].value));
  }
  xs.push_back(eig.back().value + 1.0);
  return xs;
}

}  // namespace

std::pair<MonotoneSection, MonotoneSection> das_map(const HermitianOp& a,
                                                    const ContextPoset& P,
                                                    const SpectrumPoint& lam, Variant v) {
  check_hermitian(a);
  int base = P.find(lam.context);
  if (base < 0) throw BadInput("the point's context is not in the poset");
  const Mat& q = lam.atom();
  std::vector<int> domain = (v == Variant::contravariant) ? P.down_set(base) : P.up_set(base);

  MonotoneSection lower, upper;
  lower.kind = MonotoneSection::Kind::lower;
  upper.kind = MonotoneSection::Kind::upper;
  lower.variant = upper.variant = v;
  lower.base = upper.base = base;
  for (int d : domain) {
    double vo = point_value(q, daseinise_sa_outer(a, P.at(d)));
    double vi = point_value(q, daseinise_sa_inner(a, P.at(d)));
    if (v == Variant::contravariant) {
      lower.values.emplace_back(d, vo);
      upper.values.emplace_back(d, vi);
    } else {
      lower.values.emplace_back(d, vi);
      upper.values.emplace_back(d, vo);
    }
  }
  return {lower, upper};
}

IntervalValue interval_at(const MonotoneSection& lower, const MonotoneSection& upper,
                          int stage) {
  if (lower.kind != MonotoneSection::Kind::lower || upper.kind != MonotoneSection::Kind::upper)
    throw BadInput("interval pairing needs one lower and one upper section");
  if (lower.variant != upper.variant || lower.base != upper.base)
    throw BadInput("interval pairing needs sections of one das_map result");
  double vl = lower.at(stage);
  double vu = upper.at(stage);
  IntervalValue iv;
  if (lower.variant == Variant::contravariant) {
    iv.lo = vu;  // inner value
    iv.hi = vl;  // outer value
  } else {
    iv.lo = vl;
    iv.hi = vu;
  }
  if (iv.lo > iv.hi + tols().ord * (1.0 + std::abs(iv.lo) + std::abs(iv.hi)))
    throw PreconditionViolated("interval value has lo > hi");
  return iv;
}

CheckReport check_continuity(const HermitianOp& a, const ContextPoset& P, Variant v) {
  check_hermitian(a);
  CheckReport r;
  r.name = (v == Variant::contravariant) ? "continuity-contravariant" : "continuity-covariant";
  DasTables t = das_tables(a, P);

  // In the contravariant bundle the preimage must be closed under
  // restriction to coarser stages; in the covariant bundle under every
  // extension to finer stages. The grid deliberately contains the
  // eigenvalues and daseinised coefficients lie exactly on them, so the
  // preimages are taken with a margin: strictly inside on the antecedent,
  // within the margin on the consequent. Otherwise rounding noise of order
  // machine epsilon would decide ties both ways.
  double margin = tols().ord * (1.0 + norm_inf(a));
  auto closed = [&](bool use_outer, bool above, double x) {
    const auto& table = use_outer ? t.outer : t.inner;
    auto in = [&](int d, int i, double slack) {
      double val = table[static_cast<size_t>(d)][static_cast<size_t>(i)];
      return above ? (val > x - slack) : (val < x + slack);
    };
    for (int d = 0; d < P.size(); ++d) {
      for (int i = 0; i < P.at(d).natoms(); ++i) {
        if (!in(d, i, -margin)) continue;
        if (v == Variant::contravariant) {
          for (int dd : P.down_set(d)) {
            r.check(in(dd, P.restrict_atom(d, dd, i), margin),
                    "restriction left the preimage at x=" + std::to_string(x) + " stage " +
                        P.at(dd).label);
          }
        } else {
          for (int e : P.up_set(d)) {
            for (int j = 0; j < P.at(e).natoms(); ++j) {
              if (P.restrict_atom(e, d, j) != i) continue;
              r.check(in(e, j, margin), "extension left the preimage at x=" + std::to_string(x) +
                                            " stage " + P.at(e).label);
            }
          }
        }
      }
    }
  };

  for (double x : threshold_grid(a)) {
    if (v == Variant::contravariant) {
      closed(true, true, x);    // outer super-level
      closed(false, false, x);  // inner sub-level
    } else {
      closed(false, true, x);   // inner super-level
      closed(true, false, x);   // outer sub-level
    }
  }
  return r;
}

CheckReport sandwich_check(const HermitianOp& a, double s, double r, double eps,
                           const ContextPoset& P, Variant v) {
  check_hermitian(a);
  if (!(s < r) || !(eps > 0))
    throw PreconditionViolated("sandwich window needs s < r and eps > 0");
  CheckReport rep;
  rep.name = (v == Variant::contravariant) ? "sandwich-contravariant" : "sandwich-covariant";

  DasTables t = das_tables(a, P);
  double inf = std::numeric_limits<double>::infinity();
  auto sp = std::make_shared<const ContextPoset>(P);
  Subobject middle = heyting_meet(elementary_prop(a, BorelSet::interval(-inf, r), sp, v),
                                  elementary_prop(a, BorelSet::interval(s, inf), sp, v));

  // Daseinised coefficients lie on the spectrum, and the interesting
  // thresholds do too, so "strictly inside" must resolve ties the way the
  // spectral projections do: a value within the eigenvalue tolerance of an
  // endpoint counts as sitting on it, hence outside the open window.
  double m = tols().eig * norm_scale(a);
  auto window = [&](int d, int i, double lo, double hi) {
    double vo = t.outer[static_cast<size_t>(d)][static_cast<size_t>(i)];
    double vi = t.inner[static_cast<size_t>(d)][static_cast<size_t>(i)];
    return (v == Variant::contravariant) ? (vo > lo + m && vi < hi - m)
                                         : (vi > lo + m && vo < hi - m);
  };

  for (int d = 0; d < P.size(); ++d) {
    const auto& mid = middle.family[static_cast<size_t>(d)];
    for (int i = 0; i < P.at(d).natoms(); ++i) {
      bool in_mid = std::binary_search(mid.begin(), mid.end(), i);
      std::string where = " at " + P.at(d).label + " atom " + std::to_string(i);
      rep.check(!window(d, i, s, r) || in_mid, "window test escaped the proposition" + where);
      rep.check(!in_mid || window(d, i, s - eps, r + eps),
                "proposition escaped the widened window" + where);
    }
  }
  return rep;
}

std::pair<bool, bool> check_ujelly(const HermitianOp& a, const Context& C,
                                   const SpectrumPoint& lam) {
  check_hermitian(a);
  if (!context_equal(lam.context, C)) throw BadInput("the point does not live at this context");
  auto eig = eigendecompose(a);
  int k = C.natoms();
  const Mat& q = lam.atom();
  double scale = norm_scale(a);

  // All lattice elements of P(C) that the point evaluates to 1 on.
  std::vector<Mat> ones;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Mat p = zeros(C.dim());
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) p += C.atoms[static_cast<size_t>(i)];
    if (point_value(q, p) >= 1.0 - tols().truth) ones.push_back(std::move(p));
  }

  bool wit_sup = false, wit_inf = false;
  double sup = 0.0, inf = 0.0;
  for (const auto& ep : eig) {
    double x = ep.value;
    Mat open_bound = identity(C.dim()) - spectral_resolution_below(a, x);  // 1 - chi_(-inf,x)
    Mat closed_bound = spectral_resolution(a, x);                          // chi_(-inf,x]
    for (const Mat& p : ones) {
      if (proj_leq(p, open_bound) && (!wit_sup || x > sup)) { sup = x; wit_sup = true; }
      if (proj_leq(p, closed_bound) && (!wit_inf || x < inf)) { inf = x; wit_inf = true; }
    }
  }
  if (!wit_sup) sup = eig.front().value;  // empty: fall back to min spec
  if (!wit_inf) inf = eig.back().value;   // empty: fall back to max spec

  double vi = eval_point(lam, daseinise_sa_inner(a, C));
  double vo = eval_point(lam, daseinise_sa_outer(a, C));
  double tol = tols().eig * scale;
  return {std::abs(sup - vi) <= tol, std::abs(inf - vo) <= tol};
}

std::vector<Section> enumerate_sections(const ContextPoset& P, int c, long cap) {
  if (c < 0 || c >= P.size()) throw BadInput("section base stage out of range");
  std::vector<int> stages = P.down_set(c);
  int ns = static_cast<int>(stages.size());

  long count = 1;
  for (int d : stages) {
    count *= P.at(d).natoms();
    if (count > cap) throw CapExceeded("section candidate count exceeds cap");
  }

  // Position of each poset stage inside `stages`, -1 elsewhere.
  std::vector<int> pos(static_cast<size_t>(P.size()), -1);
  for (int p = 0; p < ns; ++p) pos[static_cast<size_t>(stages[static_cast<size_t>(p)])] = p;

  auto compatible = [&](const std::vector<int>& s) {
    for (int pa = 0; pa < ns; ++pa) {
      int da = stages[static_cast<size_t>(pa)];
      for (int pb = 0; pb < ns; ++pb) {
        int db = stages[static_cast<size_t>(pb)];
        if (!P.leq(da, db)) continue;  // need da <= db
        if (P.restrict_atom(db, da, s[static_cast<size_t>(pb)]) != s[static_cast<size_t>(pa)])
          return false;
      }
    }
    return true;
  };

  // Continuity against every clopen family generated by a single point
  // (d0, pt): members are the restrictions of pt below d0, nothing
  // elsewhere. The preimage of such a family under the section must be a
  // down-set of stages.
  auto continuous = [&](const std::vector<int>& s) {
    for (int p0 = 0; p0 < ns; ++p0) {
      int d0 = stages[static_cast<size_t>(p0)];
      for (int pt = 0; pt < P.at(d0).natoms(); ++pt) {
        std::vector<bool> pre(static_cast<size_t>(ns), false);
        for (int p = 0; p < ns; ++p) {
          int d = stages[static_cast<size_t>(p)];
          if (!P.leq(d, d0)) continue;
          pre[static_cast<size_t>(p)] =
              (s[static_cast<size_t>(p)] == P.restrict_atom(d0, d, pt));
        }
        for (int p = 0; p < ns; ++p) {
          if (!pre[static_cast<size_t>(p)]) continue;
          for (int pp = 0; pp < ns; ++pp) {
            if (P.leq(stages[static_cast<size_t>(pp)], stages[static_cast<size_t>(p)]) &&
                !pre[static_cast<size_t>(pp)])
              return false;
          }
        }
      }
    }
    return true;
  };

  std::vector<Section> out;
  std::vector<int> s(static_cast<size_t>(ns), 0);
  while (true) {
    bool cont = continuous(s);
    if (cont != compatible(s))
      throw PreconditionViolated("continuity filter disagrees with compatibility");
    if (cont) {
      Section sec;
      for (int p = 0; p < ns; ++p)
        sec.points.emplace_back(stages[static_cast<size_t>(p)], s[static_cast<size_t>(p)]);
      out.push_back(std::move(sec));
    }
    int p = ns - 1;
    while (p >= 0 && s[static_cast<size_t>(p)] + 1 >=
                         P.at(stages[static_cast<size_t>(p)]).natoms()) {
      s[static_cast<size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
    ++s[static_cast<size_t>(p)];
  }
  return out;
}

}  // namespace qlogic

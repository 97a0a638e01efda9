#include "qlogic/dynamics.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "qlogic/daseinise.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

Mat StarHom::apply(const Mat& a) const {
  int n = source_dim, k = multiplicity, m = target_dim();
  if (a.rows() != n || a.cols() != n) throw BadInput("operator dimension does not match source");
  Mat blown = zeros(m);  // a tensor I_k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int s = 0; s < k; ++s) blown(i * k + s, j * k + s) = a(i, j);
  return unitary * blown * unitary.adjoint();
}

StarHom make_star_hom(int source_dim, int multiplicity, Mat unitary) {
  if (source_dim < 1 || multiplicity < 1)
    throw BadInput("source dimension and multiplicity must be positive");
  int m = source_dim * multiplicity;
  if (unitary.rows() != m || unitary.cols() != m)
    throw BadInput("unitary must be square of size source_dim * multiplicity");
  if (norm_inf(unitary * unitary.adjoint() - identity(m)) > tols().ord * norm_scale(unitary))
    throw BadInput("matrix is not unitary within tolerance");
  return StarHom{source_dim, multiplicity, std::move(unitary)};
}

Context image_context(const StarHom& f, const Context& C, std::string label) {
  if (C.dim() != f.source_dim) throw BadInput("context dimension does not match source");
  std::vector<Mat> atoms;
  for (const Mat& q : C.atoms) atoms.push_back(f.apply(q));
  if (label.empty()) label = "f[" + C.label + "]";
  return make_context(std::move(atoms), std::move(label));
}

InducedContextMap induced_context_map(const StarHom& f, const ContextPoset& P_A) {
  std::vector<Context> images;
  for (int c = 0; c < P_A.size(); ++c) images.push_back(image_context(f, P_A.at(c)));
  InducedContextMap out;
  out.target = build_poset(images, false, P_A.bottom_included);
  for (int c = 0; c < P_A.size(); ++c) {
    int idx = out.target.find(images[static_cast<size_t>(c)]);
    if (idx < 0) throw PreconditionViolated("image context lost while building target poset");
    out.image.push_back(idx);
  }
  return out;
}

CheckReport reflect_commutativity(const std::function<Mat(const Mat&)>& f, int source_dim,
                                  const std::vector<Mat>& working_set, int random_pairs,
                                  Rng& rng) {
  CheckReport r;
  r.name = "reflect-commutativity";
  std::vector<std::pair<Mat, Mat>> pairs;
  for (size_t i = 0; i < working_set.size(); ++i)
    for (size_t j = i + 1; j < working_set.size(); ++j)
      pairs.emplace_back(working_set[i], working_set[j]);
  for (int t = 0; t < random_pairs; ++t)
    pairs.emplace_back(rng.hermitian(source_dim), rng.hermitian(source_dim));

  for (const auto& [a, b] : pairs) {
    double tol_ab = tols().ord * norm_scale(a) * norm_scale(b);
    Mat fa = f(a), fb = f(b);
    double tol_im = tols().ord * norm_scale(fa) * norm_scale(fb);
    if (norm_inf(commutator(fa, fb)) > tol_im) continue;  // images do not commute: no claim
    r.check(norm_inf(commutator(a, b)) <= tol_ab,
            "images commute but sources do not, commutator norm " +
                std::to_string(norm_inf(commutator(a, b))));
  }
  return r;
}

namespace {

// Compression of x onto the diagonal algebra of D.
Mat diag_compress(const Mat& x, const Context& D) {
  Mat out = zeros(static_cast<int>(x.rows()));
  for (const Mat& q : D.atoms) out += (real_trace(q * x) / real_trace(q)) * q;
  return out;
}

}  // namespace

std::vector<Context> inverse_context_map(const StarHom& f, const ContextPoset& P_B, Rng& rng) {
  int n = f.source_dim, m = f.target_dim();

  std::vector<Context> out;
  std::vector<Mat> generator_pool;
  for (int di = 0; di < P_B.size(); ++di) {
    const Context& D = P_B.at(di);
    if (D.dim() != m) throw BadInput("target poset dimension does not match the map");

    // a is in the preimage algebra iff f(a) equals its compression onto D.
    Mat L = Mat::Zero(m * m, n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Mat e = Mat::Zero(n, n);
        e(i, j) = 1.0;
        Mat img = f.apply(e);
        img -= diag_compress(img, D);
        L.col(i * n + j) = Eigen::Map<const Vec>(img.data(), m * m);
      }
    }
    Eigen::FullPivLU<Mat> lu(L);
    Mat kernel = lu.kernel();

    std::vector<Mat> gens;
    for (int c = 0; c < kernel.cols(); ++c) {
      Mat a = Eigen::Map<const Mat>(kernel.col(c).data(), n, n);
      Mat h1 = (a + a.adjoint()) / 2.0;
      Mat h2 = (a - a.adjoint()) / Cplx(0.0, 2.0);
      if (norm_inf(h1) > 1e-9) gens.push_back(h1);
      if (norm_inf(h2) > 1e-9) gens.push_back(h2);
    }
    for (size_t i = 0; i < gens.size(); ++i) {
      for (size_t j = i + 1; j < gens.size(); ++j) {
        if (norm_inf(commutator(gens[i], gens[j])) >
            tols().ord * norm_scale(gens[i]) * norm_scale(gens[j]))
          throw DoesNotReflect("preimage of " + D.label + " is not commutative");
      }
    }
    if (gens.empty()) gens.push_back(identity(n));  // cannot happen: 1 is always a preimage
    out.push_back(context_from_commuting(gens, "g[" + D.label + "]"));
    generator_pool.insert(generator_pool.end(), gens.begin(), gens.end());
  }

  auto fn = [&f](const Mat& a) { return f.apply(a); };
  CheckReport sample = reflect_commutativity(fn, n, generator_pool, 50, rng);
  if (!sample.ok())
    throw DoesNotReflect("commutativity reflection refuted: " + sample.witnesses.front());
  return out;
}

SpectrumPoint sigma_map(const StarHom& f, const SpectrumPoint& lam, const Context& C) {
  Context imgC = image_context(f, C);
  if (!context_equal(lam.context, imgC))
    throw NotInImage("the point does not live over the image of this context");
  for (int i = 0; i < C.natoms(); ++i)
    if (proj_leq(lam.atom(), f.apply(C.atoms[static_cast<size_t>(i)])))
      return SpectrumPoint{C, i};
  throw NotInImage("no source atom covers the point");
}

std::pair<std::vector<int>, std::vector<int>> pullback_index_sets(const StarHom& f,
                                                                  const ContextPoset& P_A,
                                                                  const ContextPoset& P_B,
                                                                  int c) {
  if (c < 0 || c >= P_A.size()) throw BadInput("source stage out of range");
  Context imgC = image_context(f, P_A.at(c));
  std::vector<int> above;
  for (int d = 0; d < P_B.size(); ++d)
    if (context_leq(imgC, P_B.at(d))) above.push_back(d);

  std::set<int> from;
  for (int cp = 0; cp < P_A.size(); ++cp) {
    if (!P_A.leq(c, cp)) continue;
    int idx = P_B.find(image_context(f, P_A.at(cp)));
    if (idx < 0)
      throw NotInImage("image of source context " + P_A.at(cp).label +
                       " is missing from the target poset");
    from.insert(idx);
  }
  return {above, std::vector<int>(from.begin(), from.end())};
}

CheckReport check_equivariance(const StarHom& h, const HermitianOp& a, const BorelSet& delta,
                               const Context& C) {
  if (!h.is_automorphism())
    throw PreconditionViolated("equivariance check needs an automorphism");
  check_hermitian(a);
  CheckReport r;
  r.name = "equivariance";
  double tol = tols().eig * norm_scale(a);
  Mat ha = h.apply(a);
  Context hC = image_context(h, C);

  double dev1 = norm_inf(h.apply(spectral_projection(a, delta)) - spectral_projection(ha, delta));
  r.check(dev1 <= tol, "spectral projection deviates by " + std::to_string(dev1));
  double dev2 = norm_inf(h.apply(daseinise_sa_outer(a, C)) - daseinise_sa_outer(ha, hC));
  r.check(dev2 <= tol, "outer daseinisation deviates by " + std::to_string(dev2));
  double dev3 = norm_inf(h.apply(daseinise_sa_inner(a, C)) - daseinise_sa_inner(ha, hC));
  r.check(dev3 <= tol, "inner daseinisation deviates by " + std::to_string(dev3));
  return r;
}

std::vector<int> induced_perm(const StarHom& h, const ContextPoset& P) {
  if (!h.is_automorphism())
    throw PreconditionViolated("induced permutation needs an automorphism");
  std::vector<int> perm;
  for (int c = 0; c < P.size(); ++c) {
    int idx = P.find(image_context(h, P.at(c)));
    if (idx < 0)
      throw PosetNotClosed("the poset is not closed under the induced map at " + P.at(c).label);
    perm.push_back(idx);
  }
  return perm;
}

TransformedTruth transform_truth(const StarHom& h, const State& psi, const HermitianOp& a,
                                 const BorelSet& delta, const ContextPoset& P, Variant v) {
  check_hermitian(a);
  std::vector<int> perm = induced_perm(h, P);
  auto sp = std::make_shared<const ContextPoset>(P);

  // Route one: the proposition about a, judged in psi.
  TransformedTruth out;
  out.sieve1 = truth_sieve(psi, elementary_prop(a, delta, sp, v), 1.0);

  // Route two: the proposition about h(a), judged in the pushed state. The
  // two routes share no daseinisation: equality under the induced context
  // map is the equivariance theorem, not bookkeeping.
  State hpsi = make_state(h.apply(psi.rho));
  out.sieve2 = truth_sieve(hpsi, elementary_prop(h.apply(a), delta, sp, v), 1.0);

  std::vector<int> mapped;
  for (int c : out.sieve1.members) mapped.push_back(perm[static_cast<size_t>(c)]);
  std::sort(mapped.begin(), mapped.end());
  out.equal_under_map = (mapped == out.sieve2.members);
  return out;
}

}  // namespace qlogic

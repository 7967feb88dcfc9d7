#pragma once

#include <string>
#include <vector>

#include "pureres/cohomology.hpp"

namespace pureres {

/* Ext^k(E, F) of the cokernel bundles of two resolutions, as the
   hypercohomology of the hom complex.  Values are exact unless the hom
   complex spans more than n+1 positions and a corner pair fires; such
   entries come back as intervals. */
template <class F>
std::vector<CohomEntry> ext_dims(const F& K, const LineComplex<typename F::Elem>& A,
                                 const LineComplex<typename F::Elem>& B, int kmax) {
  if (!is_presentation(K, A) || !is_presentation(K, B))
    throw PreconditionViolated("ext_dims needs presentations");
  auto H = hypercohomology(K, hom_complex(K, A, B), 0);
  std::vector<CohomEntry> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) out[k] = H.at(k);
  return out;
}

template <class F>
CohomEntry dim_hom(const F& K, const LineComplex<typename F::Elem>& A,
                   const LineComplex<typename F::Elem>& B) {
  if (!is_presentation(K, A) || !is_presentation(K, B))
    throw PreconditionViolated("dim_hom needs presentations");
  // single lazy entry: long presentations make the full hom-complex table
  // intractably wide away from degree zero
  return hypercohomology_entry(K, hom_complex(K, A, B), 0, 0);
}

/* Hom(E, E) is one-dimensional exactly for simple sheaves.  The degree-0
   entry of the hom complex never meets a corner (that would need a tail
   longer than n), so the answer is always exact. */
template <class F>
CohomEntry simplicity_dim(const F& K, const LineComplex<typename F::Elem>& P) {
  return dim_hom(K, P, P);
}

template <class F>
bool is_simple(const F& K, const LineComplex<typename F::Elem>& P) {
  auto e = simplicity_dim(K, P);
  if (!e.exact()) throw IndeterminateEntry("simplicity dimension came back as an interval");
  return e.lo == 1;
}

/* ----- global generation of Hom(E, F) at sampled fibers ----- */

/* At a point P, the classes of the lifted homs phi_k: C^0_E -> C^0_F span
   Hom(E_P, F_P) iff the matrices kappa_F . phi_k(P), which kill the image
   of d_E(P) by the chain condition, span the full space of such matrices;
   that space has dimension rk(F) . rk(E).  kappa_F is a basis of
   functionals cutting out F_P inside the fiber of C^0_F. */
template <class F>
bool spans_hom_fiber(const F& K, const LineComplex<typename F::Elem>& E,
                     const LineComplex<typename F::Elem>& Fp,
                     const std::vector<Mat<Form<typename F::Elem>>>& lifts,
                     const std::vector<typename F::Elem>& pt, int rkE, int rkF) {
  using Elem = typename F::Elem;
  int r0E = (int)E.term_at(0).size();
  int r0F = (int)Fp.term_at(0).size();
  Mat<Elem> kappaF;
  if (Fp.len() == 1) {
    kappaF = identity_mat(K, r0F);
  } else {
    auto dF = fiber_matrix(K, Fp, -1, pt);
    auto kb = kernel_basis(K, mat_transpose(dF));  // columns: left null vectors
    kappaF = mat_transpose(kb);                    // rkF x r0F on generic fibers
  }
  if (kappaF.rows != rkF) return false;  // degenerate fiber; caller may resample
  Mat<Elem> stack((int)lifts.size(), kappaF.rows * r0E);
  for (int k = 0; k < (int)lifts.size(); ++k) {
    Mat<Elem> phiP(r0F, r0E);
    for (int i = 0; i < r0F; ++i)
      for (int j = 0; j < r0E; ++j) {
        const auto& f = lifts[k].at(i, j);
        phiP.at(i, j) = f.is_zero() ? K.zero() : eval_form(K, f, pt);
      }
    auto red = mat_mul(K, kappaF, phiP);
    for (int i = 0; i < red.rows; ++i)
      for (int j = 0; j < r0E; ++j) stack.at(k, i * r0E + j) = red.at(i, j);
  }
  return mat_rank(K, stack) == rkE * rkF;
}

/* ----- conditions for the cokernel dictionary ----- */

/* For a pair (E, F) to carry the correspondence between representation
   data and cokernel bundles, five conditions are checked:
     1. E and F are simple;
     2. Hom(F, E) = 0;
     3. Ext^1(F, E) = 0;
     4. E^* (x) F is globally generated (verified at sampled fibers);
     5. w = dim Hom(E, F) >= 3.
   Each condition is reported separately; sampling for condition 4 is a
   positive certificate at the sampled points only, and the points used
   are reproducible from the seed. */
struct PairConditions {
  bool simple_e = false, simple_f = false;
  CohomEntry hom_ee, hom_ff;
  CohomEntry hom_fe, ext1_fe;
  bool globally_generated = false;
  int gg_samples = 0;
  long long w = 0;
  long long lift_dim = 0;  // module-level lift count backing condition 4
  std::vector<std::string> notes;
  bool cond(int i) const {
    switch (i) {
      case 1: return simple_e && simple_f;
      case 2: return hom_fe.exact() && hom_fe.lo == 0;
      case 3: return ext1_fe.exact() && ext1_fe.lo == 0;
      case 4: return globally_generated;
      case 5: return w >= 3;
    }
    return false;
  }
  bool all() const { return cond(1) && cond(2) && cond(3) && cond(4) && cond(5); }
};

template <class F>
PairConditions check_cokernel_conditions(const F& K, const LineComplex<typename F::Elem>& E,
                                         const LineComplex<typename F::Elem>& Fp, Rng& rng,
                                         int samples = 50) {
  PairConditions R;
  R.hom_ee = simplicity_dim(K, E);
  R.hom_ff = simplicity_dim(K, Fp);
  R.simple_e = R.hom_ee.exact() && R.hom_ee.lo == 1;
  R.simple_f = R.hom_ff.exact() && R.hom_ff.lo == 1;
  auto back = ext_dims(K, Fp, E, 1);
  R.hom_fe = back[0];
  R.ext1_fe = back[1];
  auto w_entry = dim_hom(K, E, Fp);
  if (!w_entry.exact()) throw IndeterminateEntry("hom dimension for the pair is an interval");
  R.w = w_entry.lo;

  auto lifts = hom_lift_space(K, E, Fp);
  R.lift_dim = lifts.dim;
  if (R.lift_dim != R.w)
    R.notes.push_back("lift space dimension " + std::to_string(R.lift_dim) +
                      " differs from hom dimension " + std::to_string(R.w) +
                      "; generation checked with the available lifts only");
  Rng local = rng.fork(0x67670001);
  int rkE = presented_rank(K, E, local);
  int rkF = presented_rank(K, Fp, local);
  R.gg_samples = samples;
  R.globally_generated = R.w > 0;
  for (int s = 0; s < samples && R.globally_generated; ++s) {
    auto pt = random_point(K, local, E.n);
    if (!spans_hom_fiber(K, E, Fp, lifts.basis, pt, rkE, rkF)) R.globally_generated = false;
  }
  return R;
}

/* ----- exceptionality ----- */

struct ExceptionalityResult {
  std::vector<CohomEntry> ext;  // Ext^k(E, E), k = 0..n
  bool exceptional = false;     // endomorphisms are scalars, higher self-Ext vanishes
  std::vector<std::string> notes;
};

template <class F>
ExceptionalityResult exceptionality_check(const F& K, const LineComplex<typename F::Elem>& P) {
  ExceptionalityResult R;
  R.ext = ext_dims(K, P, P, P.n);
  bool ok = R.ext[0].exact() && R.ext[0].lo == 1;
  for (int k = 1; k <= P.n; ++k) {
    if (!R.ext[k].exact()) {
      ok = false;
      R.notes.push_back("Ext^" + std::to_string(k) + " is an interval [" +
                        std::to_string(R.ext[k].lo) + ", " + std::to_string(R.ext[k].hi) + "]");
      continue;
    }
    if (R.ext[k].lo != 0) ok = false;
  }
  R.exceptional = ok;
  return R;
}

}  // namespace pureres

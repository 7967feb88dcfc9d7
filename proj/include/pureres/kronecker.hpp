#pragma once

#include <string>
#include <vector>

#include "pureres/complexes.hpp"
#include "pureres/homext.hpp"

namespace pureres {

/* Representations of the quiver with two vertices and w parallel arrows:
   w matrices of shape b x a, acting from the dimension-a space to the
   dimension-b space. */
template <class E>
struct KroneckerRep {
  int w = 0;
  int a = 0;
  int b = 0;
  std::vector<Mat<E>> mats;
};

inline long long tits_form(int w, long long a, long long b) {
  return a * a + b * b - (long long)w * a * b;
}

inline void require_wild(int w) {
  if (w < 3)
    throw PreconditionViolated(
        "arrow count below 3: the representation type is tame and the generic-simplicity "
        "dictionary does not apply");
}

/* Schur roots of the w-arrow quiver, w >= 3: the simple roots (1,0) and
   (0,1); every dimension vector with both coordinates positive and Tits
   form at most 1 (imaginary roots, plus the real roots, each of which
   carries a rigid brick). */
inline bool is_schur_root(int w, int a, int b) {
  require_wild(w);
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    throw PreconditionViolated("dimension vector must be nonnegative and nonzero");
  if (a == 0) return b == 1;
  if (b == 0) return a == 1;
  return tits_form(w, a, b) <= 1;
}

struct SimplicityVerdict {
  bool generic_simple = false;
  long long tits = 0;
  std::string reason;
};

inline SimplicityVerdict simplicity_verdict(int w, int a, int b) {
  SimplicityVerdict v;
  v.tits = tits_form(w, a, b);
  v.generic_simple = is_schur_root(w, a, b);
  v.reason = v.generic_simple
                 ? (v.tits <= 0 ? "imaginary root" : "real root carrying a rigid brick")
                 : "Tits form exceeds 1: generic representations decompose";
  return v;
}

template <class F>
KroneckerRep<typename F::Elem> random_rep(const F& K, Rng& rng, int w, int a, int b) {
  KroneckerRep<typename F::Elem> R;
  R.w = w;
  R.a = a;
  R.b = b;
  for (int i = 0; i < w; ++i) {
    Mat<typename F::Elem> m(b, a);
    for (auto& x : m.a) x = K.sample(rng);
    R.mats.push_back(std::move(m));
  }
  return R;
}

/* Hom and Ext^1 between two representations, from the two-term complex
   Hom(V, V') (+) Hom(W, W') -> (+)_i Hom(V, W'),
   (f, g) |-> (g A_i - B_i f)_i. */
struct RepHomExt {
  long long hom = 0;
  long long ext1 = 0;
};

template <class F>
RepHomExt rep_hom_ext(const F& K, const KroneckerRep<typename F::Elem>& R1,
                      const KroneckerRep<typename F::Elem>& R2) {
  using Elem = typename F::Elem;
  if (R1.w != R2.w) throw DimensionMismatch("rep_hom_ext: arrow counts differ");
  const int w = R1.w;
  const long long dom = (long long)R1.a * R2.a + (long long)R1.b * R2.b;
  const long long cod = (long long)w * R1.a * R2.b;
  Mat<Elem> M((int)cod, (int)dom);
  // unknowns: f (a2 x a1) then g (b2 x b1), both flattened row-major
  auto fvar = [&](int r, int c) { return r * R1.a + c; };
  auto gvar = [&](int r, int c) { return R2.a * R1.a + r * R1.b + c; };
  for (int i = 0; i < w; ++i) {
    const auto& A = R1.mats[i];  // b1 x a1
    const auto& B = R2.mats[i];  // b2 x a2
    int base = i * R1.a * R2.b;
    // rows index entries (r, c) of the b2 x a1 result, row-major
    for (int r = 0; r < R2.b; ++r)
      for (int c = 0; c < R1.a; ++c) {
        int row = base + r * R1.a + c;
        // (g A)_rc = sum_k g_{rk} A_{kc}
        for (int k = 0; k < R1.b; ++k) {
          const auto& x = A.at(k, c);
          if (!K.is_zero(x)) M.at(row, gvar(r, k)) = K.add(M.at(row, gvar(r, k)), x);
        }
        // -(B f)_rc = -sum_k B_{rk} f_{kc}
        for (int k = 0; k < R2.a; ++k) {
          const auto& x = B.at(r, k);
          if (!K.is_zero(x))
            M.at(row, fvar(k, c)) = K.sub(M.at(row, fvar(k, c)), x);
        }
      }
  }
  long long rank = mat_rank(K, M);
  return {dom - rank, cod - rank};
}

/* ----- the bundle side of the dictionary ----- */

/* A basis of Hom(E, F) for a pair of line-bundle-sum presentations, in a
   canonical order; for single line bundles this is the monomial basis of
   the connecting degree in descending grevlex order. */
template <class F>
std::vector<Mat<Form<typename F::Elem>>> sigma_basis(const F& K,
                                                     const LineComplex<typename F::Elem>& E,
                                                     const LineComplex<typename F::Elem>& Fp) {
  if (E.len() != 1 || Fp.len() != 1)
    throw PreconditionViolated("sigma_basis needs one-term presentations");
  return hom_lift_space(K, E, Fp).basis;
}

/* Bundle map E^a -> F^b attached to a representation through a fixed hom
   basis: the block in row r (copy of F), column c (copy of E) is
   sum_i (A_i)_{rc} sigma_i.  Returned as a two-term presentation of its
   cokernel. */
template <class F>
LineComplex<typename F::Elem> realize(const F& K, const KroneckerRep<typename F::Elem>& R,
                                      const LineComplex<typename F::Elem>& E,
                                      const LineComplex<typename F::Elem>& Fp) {
  using Elem = typename F::Elem;
  if (E.len() != 1 || Fp.len() != 1)
    throw PreconditionViolated("realize needs one-term presentations");
  auto sigmas = sigma_basis(K, E, Fp);
  if ((int)sigmas.size() != R.w)
    throw DimensionMismatch("arrow count does not match dim Hom(E, F)");
  const auto& et = E.term_at(0);
  const auto& ft = Fp.term_at(0);
  LineComplex<Elem> C;
  C.n = E.n;
  C.first_pos = -1;
  C.label = "realized";
  std::vector<int> src, dst;
  for (int c = 0; c < R.a; ++c) src.insert(src.end(), et.begin(), et.end());
  for (int r = 0; r < R.b; ++r) dst.insert(dst.end(), ft.begin(), ft.end());
  C.terms.push_back(src);
  C.terms.push_back(dst);
  Mat<Form<Elem>> d((int)dst.size(), (int)src.size());
  for (auto& f : d.a) f = zero_form(K, C.n, 0);
  const int re = (int)et.size(), rf = (int)ft.size();
  for (int r = 0; r < R.b; ++r)
    for (int c = 0; c < R.a; ++c)
      for (int i = 0; i < R.w; ++i) {
        const auto& coef = R.mats[i].at(r, c);
        if (K.is_zero(coef)) continue;
        for (int u = 0; u < rf; ++u)
          for (int v = 0; v < re; ++v) {
            const auto& s = sigmas[i].at(u, v);
            if (s.is_zero()) continue;
            auto& slot = d.at(r * rf + u, c * re + v);
            auto scaled = form_scale(K, s, coef);
            slot = slot.is_zero() ? scaled : form_add(K, slot, scaled);
          }
      }
  C.diffs.push_back(std::move(d));
  validate_complex(K, C);
  return C;
}

/* Pointwise injectivity of the realized map at sampled fibers: rank of
   sum_i A_i (x) sigma_i(P) equals a . rk(E) at each sample. */
template <class F>
bool global_injectivity(const F& K, const KroneckerRep<typename F::Elem>& R,
                        const LineComplex<typename F::Elem>& E,
                        const LineComplex<typename F::Elem>& Fp, Rng& rng, int samples = 50) {
  auto C = realize(K, R, E, Fp);
  Rng local = rng.fork(0x696e6a01);
  int need = (int)C.term_at(-1).size();
  for (int s = 0; s < samples; ++s) {
    auto pt = random_point(K, local, C.n);
    if (mat_rank(K, fiber_matrix(K, C, -1, pt)) != need) return false;
  }
  return true;
}

}  // namespace pureres

#pragma once

#include <string>
#include <vector>

#include "pureres/ring.hpp"

namespace pureres {

/* A bounded cochain complex whose terms are finite direct sums of line
   bundles O(a) on P^n.  Positions run left to right from first_pos;
   diffs[k] maps terms[k] to terms[k+1].  Differential entries are
   homogeneous forms: the entry in row i, column j of a map
   (+)O(s_j) -> (+)O(t_i) has degree t_i - s_j, and entries whose slot
   degree is negative must vanish.

   A presentation is such a complex whose rightmost position is 0; it
   stands for the cokernel sheaf of its last differential.  Builders
   produce presentations whose interior positions are exact, so the
   complex is a resolution of that cokernel by line bundle sums. */
template <class E>
struct LineComplex {
  int n = 0;
  int first_pos = 0;
  std::vector<std::vector<int>> terms;   // twists, one vector per position
  std::vector<Mat<Form<E>>> diffs;       // diffs[k]: terms[k] -> terms[k+1]
  std::string label;

  int len() const { return (int)terms.size(); }
  int last_pos() const { return first_pos + len() - 1; }
  bool has_pos(int p) const { return p >= first_pos && p <= last_pos(); }
  int idx(int p) const {
    if (!has_pos(p)) throw PreconditionViolated("position out of range");
    return p - first_pos;
  }
  const std::vector<int>& term_at(int p) const { return terms[idx(p)]; }
};

template <class F>
using LC = LineComplex<typename F::Elem>;

/* ----- validation ----- */

template <class F>
void validate_complex(const F& K, const LineComplex<typename F::Elem>& C) {
  if (C.n < 1) throw SchemaViolation("ambient dimension must be >= 1");
  if (C.terms.empty()) throw SchemaViolation("complex has no terms");
  if (C.diffs.size() + 1 != C.terms.size())
    throw SchemaViolation("differential count must be term count minus one");
  for (size_t k = 0; k < C.diffs.size(); ++k) {
    const auto& d = C.diffs[k];
    const auto& src = C.terms[k];
    const auto& dst = C.terms[k + 1];
    if (d.rows != (int)dst.size() || d.cols != (int)src.size())
      throw SchemaViolation("differential shape does not match adjacent terms");
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j) {
        const auto& f = d.at(i, j);
        int want = dst[i] - src[j];
        if (f.is_zero()) continue;
        if (f.n != C.n) throw SchemaViolation("entry in wrong variable count");
        if (f.degree != want)
          throw SchemaViolation("entry degree must be target twist minus source twist");
        if (want < 0) throw SchemaViolation("negative-degree slot must be zero");
      }
  }
  // d . d = 0 as an identity of forms
  for (size_t k = 0; k + 1 < C.diffs.size(); ++k) {
    const auto& A = C.diffs[k + 1];
    const auto& B = C.diffs[k];
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < B.cols; ++j) {
        auto acc = zero_form(K, C.n, 0);
        bool started = false;
        for (int m = 0; m < A.cols; ++m) {
          const auto& a = A.at(i, m);
          const auto& b = B.at(m, j);
          if (a.is_zero() || b.is_zero()) continue;
          auto prod = form_mul(K, a, b);
          acc = started ? form_add(K, acc, prod) : prod;
          started = true;
        }
        if (started && !acc.is_zero())
          throw SchemaViolation("composite of consecutive differentials is nonzero");
      }
  }
}

template <class F>
bool is_presentation(const F&, const LineComplex<typename F::Elem>& C) {
  return C.last_pos() == 0 && C.len() >= 1;
}

/* ----- elementary constructions ----- */

template <class E>
LineComplex<E> twist_complex(const LineComplex<E>& C, int t) {
  LineComplex<E> out = C;
  for (auto& term : out.terms)
    for (auto& a : term) a += t;
  return out;
}

/* One-term presentation of a direct sum of line bundles. */
template <class E>
LineComplex<E> trivial_presentation(int n, std::vector<int> twists, std::string label = "") {
  LineComplex<E> C;
  C.n = n;
  C.first_pos = 0;
  C.terms.push_back(std::move(twists));
  C.label = std::move(label);
  return C;
}

/* Dual complex: position p becomes -p, twists negate, differentials
   transpose.  No signs are introduced; the result is isomorphic to the
   signed convention and composes to zero either way. */
template <class E>
LineComplex<E> dualize(const LineComplex<E>& C) {
  LineComplex<E> out;
  out.n = C.n;
  out.first_pos = -C.last_pos();
  out.label = C.label.empty() ? "" : C.label + "^";
  int L = C.len();
  out.terms.resize(L);
  for (int k = 0; k < L; ++k) {
    const auto& t = C.terms[L - 1 - k];
    std::vector<int> neg(t.size());
    for (size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
    out.terms[k] = std::move(neg);
  }
  out.diffs.resize(C.diffs.size());
  for (size_t k = 0; k < C.diffs.size(); ++k)
    out.diffs[k] = mat_transpose(C.diffs[C.diffs.size() - 1 - k]);
  return out;
}

template <class F>
LineComplex<typename F::Elem> direct_sum(const F& K, const LineComplex<typename F::Elem>& A,
                                         const LineComplex<typename F::Elem>& B) {
  if (A.n != B.n) throw DimensionMismatch("direct_sum: ambient dimension mismatch");
  LineComplex<typename F::Elem> out;
  out.n = A.n;
  out.first_pos = std::min(A.first_pos, B.first_pos);
  int last = std::max(A.last_pos(), B.last_pos());
  int L = last - out.first_pos + 1;
  out.terms.assign(L, {});
  for (int p = out.first_pos; p <= last; ++p) {
    auto& t = out.terms[p - out.first_pos];
    if (A.has_pos(p)) t.insert(t.end(), A.term_at(p).begin(), A.term_at(p).end());
    if (B.has_pos(p)) t.insert(t.end(), B.term_at(p).begin(), B.term_at(p).end());
  }
  out.diffs.resize(L - 1);
  for (int p = out.first_pos; p < last; ++p) {
    int rows = (int)out.terms[p + 1 - out.first_pos].size();
    int cols = (int)out.terms[p - out.first_pos].size();
    Mat<Form<typename F::Elem>> d(rows, cols);
    for (auto& f : d.a) f = zero_form(K, out.n, 0);
    int r0 = 0, c0 = 0;
    if (A.has_pos(p) && A.has_pos(p + 1)) {
      const auto& dA = A.diffs[A.idx(p)];
      for (int i = 0; i < dA.rows; ++i)
        for (int j = 0; j < dA.cols; ++j) d.at(i, j) = dA.at(i, j);
    }
    r0 = A.has_pos(p + 1) ? (int)A.term_at(p + 1).size() : 0;
    c0 = A.has_pos(p) ? (int)A.term_at(p).size() : 0;
    if (B.has_pos(p) && B.has_pos(p + 1)) {
      const auto& dB = B.diffs[B.idx(p)];
      for (int i = 0; i < dB.rows; ++i)
        for (int j = 0; j < dB.cols; ++j) d.at(r0 + i, c0 + j) = dB.at(i, j);
    }
    out.diffs[p - out.first_pos] = std::move(d);
  }
  return out;
}

/* Total complex of the tensor product of two complexes of line bundle
   sums.  Components of position p are the pairs (pa, pb), pa + pb = p,
   listed by ascending pa; within a pair, twists pair lexicographically
   (A component outer, B component inner).  The sign on the B-side
   differential is (-1)^pa. */
template <class F>
LineComplex<typename F::Elem> tensor_total(const F& K, const LineComplex<typename F::Elem>& A,
                                           const LineComplex<typename F::Elem>& B) {
  using FE = Form<typename F::Elem>;
  if (A.n != B.n) throw DimensionMismatch("tensor_total: ambient dimension mismatch");
  LineComplex<typename F::Elem> out;
  out.n = A.n;
  out.first_pos = A.first_pos + B.first_pos;
  int last = A.last_pos() + B.last_pos();
  int L = last - out.first_pos + 1;
  out.terms.assign(L, {});

  // offsets[p - first][pa - A.first] = start of the (pa, p - pa) block
  std::vector<std::vector<int>> offsets(L);
  for (int p = out.first_pos; p <= last; ++p) {
    auto& t = out.terms[p - out.first_pos];
    auto& off = offsets[p - out.first_pos];
    off.assign(A.len(), -1);
    for (int pa = A.first_pos; pa <= A.last_pos(); ++pa) {
      int pb = p - pa;
      if (!B.has_pos(pb)) continue;
      off[pa - A.first_pos] = (int)t.size();
      for (int a : A.term_at(pa))
        for (int b : B.term_at(pb)) t.push_back(a + b);
    }
  }

  out.diffs.resize(L - 1);
  for (int p = out.first_pos; p < last; ++p) {
    int rows = (int)out.terms[p + 1 - out.first_pos].size();
    int cols = (int)out.terms[p - out.first_pos].size();
    Mat<FE> d(rows, cols);
    for (auto& f : d.a) f = zero_form(K, out.n, 0);
    for (int pa = A.first_pos; pa <= A.last_pos(); ++pa) {
      int pb = p - pa;
      if (!B.has_pos(pb)) continue;
      int srcOff = offsets[p - out.first_pos][pa - A.first_pos];
      int na = (int)A.term_at(pa).size();
      int nb = (int)B.term_at(pb).size();
      // A-side: (pa, pb) -> (pa + 1, pb), entries dA (x) id
      if (A.has_pos(pa + 1)) {
        int dstOff = offsets[p + 1 - out.first_pos][pa + 1 - A.first_pos];
        if (dstOff >= 0) {
          const auto& dA = A.diffs[A.idx(pa)];
          for (int ia = 0; ia < dA.rows; ++ia)
            for (int ja = 0; ja < na; ++ja) {
              const auto& f = dA.at(ia, ja);
              if (f.is_zero()) continue;
              for (int ib = 0; ib < nb; ++ib)
                d.at(dstOff + ia * nb + ib, srcOff + ja * nb + ib) = f;
            }
        }
      }
      // B-side: (pa, pb) -> (pa, pb + 1), entries (-1)^pa id (x) dB
      if (B.has_pos(pb + 1)) {
        int dstOff = offsets[p + 1 - out.first_pos][pa - A.first_pos];
        if (dstOff >= 0) {
          const auto& dB = B.diffs[B.idx(pb)];
          bool flip = ((pa % 2) + 2) % 2 == 1;
          int nb2 = (int)B.term_at(pb + 1).size();
          for (int ib = 0; ib < nb2; ++ib)
            for (int jb = 0; jb < dB.cols; ++jb) {
              const auto& f = dB.at(ib, jb);
              if (f.is_zero()) continue;
              auto g = flip ? form_neg(K, f) : f;
              for (int ia = 0; ia < na; ++ia)
                d.at(dstOff + ia * nb2 + ib, srcOff + ia * nb + jb) = g;
            }
        }
      }
    }
    out.diffs[p - out.first_pos] = std::move(d);
  }
  return out;
}

/* Hom complex Hom(A, B) = dual(A) (x) B.  Its hypercohomology in degree k
   is Ext^k(E_A, E_B) when A and B are resolutions of their cokernels. */
template <class F>
LineComplex<typename F::Elem> hom_complex(const F& K, const LineComplex<typename F::Elem>& A,
                                          const LineComplex<typename F::Elem>& B) {
  auto out = tensor_total(K, dualize(A), B);
  out.label = "hom";
  return out;
}

template <class E>
LineComplex<E> shift_positions(const LineComplex<E>& C, int s) {
  LineComplex<E> out = C;
  out.first_pos += s;
  return out;
}

/* Positions p_lo..p_hi of C as a standalone complex; by default rebased
   so the right end sits at position 0 (presentation convention). */
template <class E>
LineComplex<E> sub_complex(const LineComplex<E>& C, int p_lo, int p_hi,
                           bool rebase_to_zero = true) {
  if (p_lo > p_hi || !C.has_pos(p_lo) || !C.has_pos(p_hi))
    throw PreconditionViolated("sub_complex: bad position range");
  LineComplex<E> out;
  out.n = C.n;
  out.first_pos = rebase_to_zero ? p_lo - p_hi : p_lo;
  out.label = C.label;
  for (int p = p_lo; p <= p_hi; ++p) out.terms.push_back(C.term_at(p));
  for (int p = p_lo; p < p_hi; ++p) out.diffs.push_back(C.diffs[C.idx(p)]);
  return out;
}

/* ----- graded pieces ----- */

template <class E>
long long term_piece_dim(const LineComplex<E>& C, int p, int u) {
  long long s = 0;
  for (int a : C.term_at(p)) s += dim_forms(C.n, u + a);
  return s;
}

/* Matrix of diffs[idx(p)] on degree-u graded pieces:
   (+)_j R_{u+s_j} -> (+)_i R_{u+t_i}. */
template <class F>
Mat<typename F::Elem> graded_diff_matrix(const F& K, const LineComplex<typename F::Elem>& C,
                                         int p, int u) {
  const auto& src = C.term_at(p);
  const auto& dst = C.term_at(p + 1);
  const auto& d = C.diffs[C.idx(p)];
  std::vector<int> coff(src.size() + 1, 0), roff(dst.size() + 1, 0);
  for (size_t j = 0; j < src.size(); ++j)
    coff[j + 1] = coff[j] + (int)dim_forms(C.n, u + src[j]);
  for (size_t i = 0; i < dst.size(); ++i)
    roff[i + 1] = roff[i] + (int)dim_forms(C.n, u + dst[i]);
  Mat<typename F::Elem> M(roff.back(), coff.back());
  for (size_t i = 0; i < dst.size(); ++i)
    for (size_t j = 0; j < src.size(); ++j) {
      const auto& f = d.at((int)i, (int)j);
      if (f.is_zero()) continue;
      auto blk = mult_matrix(K, f, u + src[j]);
      for (int r = 0; r < blk.rows; ++r)
        for (int c = 0; c < blk.cols; ++c)
          M.at(roff[i] + r, coff[j] + c) = blk.at(r, c);
    }
  return M;
}

/* Homology dimension of the degree-u piece at position p:
   dim ker(out) - rank(in). */
template <class F>
long long graded_homology_dim(const F& K, const LineComplex<typename F::Elem>& C, int p, int u) {
  long long mid = term_piece_dim(C, p, u);
  long long rk_in = 0, rk_out = 0;
  if (p > C.first_pos) rk_in = mat_rank(K, graded_diff_matrix(K, C, p - 1, u));
  if (p < C.last_pos()) rk_out = mat_rank(K, graded_diff_matrix(K, C, p, u));
  return mid - rk_in - rk_out;
}

struct ExactnessFailure {
  int position = 0;
  int degree = 0;
  long long homology_dim = 0;
};

struct ExactnessReport {
  bool ok = true;
  int u_lo = 0, u_hi = 0;
  std::vector<ExactnessFailure> failures;
};

/* Check vanishing homology at the given positions for all graded degrees
   in [u_lo, u_hi].  Degrees where every adjacent term piece is zero are
   trivially exact and skipped. */
template <class F>
ExactnessReport check_exactness_graded(const F& K, const LineComplex<typename F::Elem>& C,
                                       const std::vector<int>& positions, int u_lo, int u_hi) {
  ExactnessReport rep;
  rep.u_lo = u_lo;
  rep.u_hi = u_hi;
  for (int p : positions) {
    if (!C.has_pos(p)) throw PreconditionViolated("exactness check at missing position");
    for (int u = u_lo; u <= u_hi; ++u) {
      if (term_piece_dim(C, p, u) == 0) continue;
      long long h = graded_homology_dim(K, C, p, u);
      if (h != 0) {
        rep.ok = false;
        rep.failures.push_back({p, u, h});
      }
    }
  }
  return rep;
}

/* Default degree window for graded exactness sweeps: wide enough to pin
   every graded piece that can influence the sheaf-level statements used
   downstream.  With all twists a in the complex, pieces are R_{u+a}; we
   cover u from -max_twist (first degree where anything is nonzero) up to
   -min_twist + n + 1 + slack. */
template <class E>
std::pair<int, int> default_exactness_window(const LineComplex<E>& C, int slack = 2) {
  int amin = 1 << 30, amax = -(1 << 30);
  for (auto& t : C.terms)
    for (int a : t) {
      amin = std::min(amin, a);
      amax = std::max(amax, a);
    }
  if (amin > amax) throw PreconditionViolated("complex has no line bundle summands");
  return {-amax, -amin + C.n + 1 + slack};
}

template <class E>
std::vector<int> interior_positions(const LineComplex<E>& C) {
  std::vector<int> ps;
  for (int p = C.first_pos + 1; p < C.last_pos(); ++p) ps.push_back(p);
  return ps;
}

/* ----- cokernel data ----- */

/* Dimension of the degree-u piece of the cokernel module of a
   presentation. */
template <class F>
long long coker_piece_dim(const F& K, const LineComplex<typename F::Elem>& P, int u) {
  if (!is_presentation(K, P)) throw PreconditionViolated("coker_piece_dim needs a presentation");
  long long top = term_piece_dim(P, 0, u);
  if (P.len() == 1) return top;
  return top - mat_rank(K, graded_diff_matrix(K, P, -1, u));
}

/* ----- fiber evaluation ----- */

template <class F>
std::vector<typename F::Elem> random_point(const F& K, Rng& rng, int n) {
  // last coordinate pinned to 1: a point of the standard affine chart
  std::vector<typename F::Elem> pt(n + 1);
  for (int i = 0; i < n; ++i) pt[i] = K.sample(rng);
  pt[n] = K.one();
  return pt;
}

template <class F>
Mat<typename F::Elem> fiber_matrix(const F& K, const LineComplex<typename F::Elem>& C, int p,
                                   const std::vector<typename F::Elem>& pt) {
  const auto& d = C.diffs[C.idx(p)];
  Mat<typename F::Elem> M(d.rows, d.cols);
  for (int i = 0; i < d.rows; ++i)
    for (int j = 0; j < d.cols; ++j) {
      const auto& f = d.at(i, j);
      M.at(i, j) = f.is_zero() ? K.zero() : eval_form(K, f, pt);
    }
  return M;
}

/* Rank of the cokernel sheaf of a presentation: generator count minus the
   generic rank of the last differential, the latter taken as the maximum
   fiber rank over seeded sample points. */
template <class F>
int presented_rank(const F& K, const LineComplex<typename F::Elem>& P, Rng& rng,
                   int samples = 12) {
  if (!is_presentation(K, P)) throw PreconditionViolated("presented_rank needs a presentation");
  int gens = (int)P.term_at(0).size();
  if (P.len() == 1) return gens;
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    auto pt = random_point(K, rng, P.n);
    best = std::max(best, mat_rank(K, fiber_matrix(K, P, -1, pt)));
  }
  return gens - best;
}

/* ----- hom lift spaces ----- */

/* Space of degree-zero maps from the generators of a presentation P into
   the cokernel module of a presentation G, intersected with the chain
   condition: lifts phi: C^0_P -> C^0_G whose composite with the last
   differential of P lands in the image of the last differential of G.
   Returned as representatives phi (entries are forms); their classes
   modulo im(d_G . -) form the module Hom(coker P, coker G).
   When G has a single term this equals the sheaf hom space
   Hom(E_P, (+)O(b_k)) = H^0(E_P^* (x) (+)O(b_k)) on the nose. */
template <class F>
struct HomLiftSpace {
  long long dim = 0;
  std::vector<Mat<Form<typename F::Elem>>> basis;  // lifts C^0_P -> C^0_G
};

template <class F>
HomLiftSpace<F> hom_lift_space(const F& K, const LineComplex<typename F::Elem>& P,
                               const LineComplex<typename F::Elem>& G) {
  using Elem = typename F::Elem;
  if (!is_presentation(K, P) || !is_presentation(K, G))
    throw PreconditionViolated("hom_lift_space needs presentations");
  if (P.n != G.n) throw DimensionMismatch("hom_lift_space: ambient dimension mismatch");
  const int n = P.n;
  const auto& agens = P.term_at(0);          // twists a_i of C^0_P
  const auto& bgens = G.term_at(0);          // twists b_k of C^0_G

  // Unknowns: coefficients of phi entries, phi[k][i] in R_{b_k - a_i}.
  struct Slot { int k, i, deg, off, dim; };
  std::vector<Slot> slots;
  int nvars = 0;
  for (int k = 0; k < (int)bgens.size(); ++k)
    for (int i = 0; i < (int)agens.size(); ++i) {
      int deg = bgens[k] - agens[i];
      int dim = (int)dim_forms(n, deg);
      slots.push_back({k, i, deg, nvars, dim});
      nvars += dim;
    }

  const bool P_has_rel = P.len() >= 2;
  const bool G_has_rel = G.len() >= 2;
  const std::vector<int> empty_twists;
  const auto& arels = P_has_rel ? P.term_at(-1) : empty_twists;  // twists a'_j
  const auto& brels = G_has_rel ? G.term_at(-1) : empty_twists;  // twists b'_l

  // Constraint target: entries of psi_out[k][j] in R_{b_k - a'_j}.
  std::vector<int> tgt_off;
  int nrows = 0;
  if (P_has_rel) {
    for (int k = 0; k < (int)bgens.size(); ++k)
      for (int j = 0; j < (int)arels.size(); ++j) {
        tgt_off.push_back(nrows);
        nrows += (int)dim_forms(n, bgens[k] - arels[j]);
      }
  }

  auto tgt_index = [&](int k, int j) { return tgt_off[k * (int)arels.size() + j]; };

  // Columns for phi variables: composite (phi . dP)[k][j] = sum_i phi[k][i] * dP[i][j].
  Mat<Elem> phi_cols(nrows, nvars);
  if (P_has_rel && nrows > 0) {
    const auto& dP = P.diffs[P.idx(-1)];
    for (const auto& s : slots) {
      if (s.dim == 0) continue;
      for (int j = 0; j < (int)arels.size(); ++j) {
        const auto& f = dP.at(s.i, j);
        if (f.is_zero()) continue;
        // phi[k][i] has degree b_k - a_i; right-composition with f of degree
        // a_i - a'_j is multiplication by f acting on the phi coefficients.
        auto blk = mult_matrix(K, f, bgens[s.k] - agens[s.i]);
        int r0 = tgt_index(s.k, j);
        for (int r = 0; r < blk.rows; ++r)
          for (int c = 0; c < blk.cols; ++c)
            phi_cols.at(r0 + r, s.off + c) = K.add(phi_cols.at(r0 + r, s.off + c), blk.at(r, c));
      }
    }
  }

  // Columns for the image of d_G on the target side: psi[l][j] in
  // R_{b'_l - a'_j}; (d_G . psi)[k][j] = sum_l dG[k][l] * psi[l][j].
  int npsi = 0;
  std::vector<Slot> psis;
  if (P_has_rel && G_has_rel) {
    for (int l = 0; l < (int)brels.size(); ++l)
      for (int j = 0; j < (int)arels.size(); ++j) {
        int deg = brels[l] - arels[j];
        int dim = (int)dim_forms(n, deg);
        psis.push_back({l, j, deg, npsi, dim});
        npsi += dim;
      }
  }
  Mat<Elem> psi_cols(nrows, npsi);
  if (npsi > 0) {
    const auto& dG = G.diffs[G.idx(-1)];
    for (const auto& s : psis) {
      if (s.dim == 0) continue;
      for (int k = 0; k < (int)bgens.size(); ++k) {
        const auto& f = dG.at(k, s.k);  // s.k is the l index here
        if (f.is_zero()) continue;
        auto blk = mult_matrix(K, f, brels[s.k] - arels[s.i]);
        int r0 = tgt_index(k, s.i);
        for (int r = 0; r < blk.rows; ++r)
          for (int c = 0; c < blk.cols; ++c)
            psi_cols.at(r0 + r, s.off + c) = K.add(psi_cols.at(r0 + r, s.off + c), blk.at(r, c));
      }
    }
  }

  // Modding on the source side: maps C^0_P -> G^{-1} pushed into phi space.
  int nmod = 0;
  std::vector<Slot> mods;
  if (G_has_rel) {
    for (int l = 0; l < (int)brels.size(); ++l)
      for (int i = 0; i < (int)agens.size(); ++i) {
        int deg = brels[l] - agens[i];
        int dim = (int)dim_forms(n, deg);
        mods.push_back({l, i, deg, nmod, dim});
        nmod += dim;
      }
  }
  Mat<Elem> mod_cols(nvars, nmod);
  if (nmod > 0) {
    const auto& dG = G.diffs[G.idx(-1)];
    for (const auto& s : mods) {
      if (s.dim == 0) continue;
      for (int k = 0; k < (int)bgens.size(); ++k) {
        const auto& f = dG.at(k, s.k);
        if (f.is_zero()) continue;
        auto blk = mult_matrix(K, f, brels[s.k] - agens[s.i]);
        // target slot: phi[k][i]
        int dst = -1;
        for (const auto& t : slots)
          if (t.k == k && t.i == s.i) { dst = t.off; break; }
        for (int r = 0; r < blk.rows; ++r)
          for (int c = 0; c < blk.cols; ++c)
            mod_cols.at(dst + r, s.off + c) = K.add(mod_cols.at(dst + r, s.off + c), blk.at(r, c));
      }
    }
  }

  // Solve: {phi : phi . dP in im(dG . -)} as the phi-projection of
  // ker [phi_cols | -psi_cols]; then quotient by im(mod_cols).
  HomLiftSpace<F> out;
  Mat<Elem> candidates(nvars, 0);
  if (nrows == 0) {
    candidates = identity_mat(K, nvars);
  } else {
    Mat<Elem> neg_psi = psi_cols;
    for (auto& x : neg_psi.a) x = K.neg(x);
    auto kb = kernel_basis(K, hstack(phi_cols, neg_psi));
    candidates = Mat<Elem>(nvars, kb.cols);
    for (int c = 0; c < kb.cols; ++c)
      for (int r = 0; r < nvars; ++r) candidates.at(r, c) = kb.at(r, c);
  }

  std::vector<int> keep;
  if (npsi == 0 && nmod == 0) {
    // Projection is injective and there is nothing to quotient by.
    for (int c = 0; c < candidates.cols; ++c) keep.push_back(c);
  } else {
    // Incremental column reduction: seed with mod_cols, then keep candidate
    // columns that enlarge the span.  Deterministic given input order.
    Mat<Elem> work = mod_cols;
    int base_rank = work.cols > 0 ? mat_rank(K, work) : 0;
    for (int c = 0; c < candidates.cols; ++c) {
      Mat<Elem> col(nvars, 1);
      for (int r = 0; r < nvars; ++r) col.at(r, 0) = candidates.at(r, c);
      auto test = hstack(work, col);
      if (mat_rank(K, test) > base_rank + (int)keep.size()) {
        keep.push_back(c);
        work = std::move(test);
      }
    }
  }

  out.dim = (long long)keep.size();
  for (int c : keep) {
    Mat<Form<Elem>> phi((int)bgens.size(), (int)agens.size());
    for (auto& f : phi.a) f = zero_form(K, n, 0);
    for (const auto& s : slots) {
      if (s.dim == 0) continue;
      const MonoBasis& mb = monomial_basis(n, s.deg);
      std::vector<std::pair<std::vector<int>, Elem>> raw;
      for (int t = 0; t < s.dim; ++t) {
        const auto& coef = candidates.at(s.off + t, c);
        if (!K.is_zero(coef)) raw.emplace_back(mb.mons[t], coef);
      }
      phi.at(s.k, s.i) = normalize_form(K, n, s.deg, std::move(raw));
    }
    out.basis.push_back(std::move(phi));
  }
  return out;
}

/* ----- splicing ----- */

/* Extend a presentation P of E by a lift phi: C^0_P -> (+)O(b_k)
   representing an injective map E -> (+)O(b_k): the result presents
   coker(E -> (+)O(b_k)) and reuses P as its left tail.  The chain
   condition phi . d_P^{-1} = 0 is verified symbolically; injectivity of
   the induced sheaf map is the caller's obligation. */
template <class F>
LineComplex<typename F::Elem> splice_cokernel(const F& K, const LineComplex<typename F::Elem>& P,
                                              const Mat<Form<typename F::Elem>>& phi,
                                              const std::vector<int>& new_twists,
                                              std::string label = "") {
  if (!is_presentation(K, P)) throw PreconditionViolated("splice_cokernel needs a presentation");
  if (phi.rows != (int)new_twists.size() || phi.cols != (int)P.term_at(0).size())
    throw DimensionMismatch("splice_cokernel: lift shape mismatch");
  LineComplex<typename F::Elem> out;
  out.n = P.n;
  out.first_pos = P.first_pos - 1;
  out.terms = P.terms;
  out.terms.push_back(new_twists);
  out.diffs = P.diffs;
  out.diffs.push_back(phi);
  out.label = std::move(label);
  validate_complex(K, out);  // includes the chain condition
  return out;
}

}  // namespace pureres

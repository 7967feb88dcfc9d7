#pragma once

#include <string>
#include <vector>

#include "pureres/cohomology.hpp"
#include "pureres/complexes.hpp"

namespace pureres {

/* ----- Koszul complexes -----

   For a regular sequence f_0..f_n of common degree d in n+1 variables,
   the Koszul complex on the f_i:

     0 -> L^{n+1} -> L^n -> ... -> L^1 -> L^0 = O -> 0,

   with L^k = O(-k d)^{binom(n+1, k)} sitting at position -k.  The
   differential is contraction: e_S |-> sum_j (-1)^(j-1) f_{i_j} e_{S \ i_j}
   over S = {i_1 < ... < i_k}.  Exterior basis vectors are indexed by
   subsets of {0..n} in lexicographic order of the sorted index tuples. */

inline std::vector<std::vector<int>> subsets_lex(int n_plus_1, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // standard lexicographic combination enumeration
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > n_plus_1) return out;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n_plus_1 - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

template <class F>
LineComplex<typename F::Elem> koszul_complex(const F& K,
                                             const std::vector<Form<typename F::Elem>>& forms) {
  using FE = Form<typename F::Elem>;
  int n = (int)forms.size() - 1;
  if (n < 1) throw PreconditionViolated("koszul_complex: need at least two forms");
  int d = forms[0].degree;
  for (auto& f : forms) {
    if (f.n != n) throw PreconditionViolated("koszul_complex: need n+1 forms in n+1 variables");
    if (f.degree != d) throw PreconditionViolated("koszul_complex: forms must share a degree");
    if (f.is_zero()) throw PreconditionViolated("koszul_complex: zero form");
  }
  LineComplex<typename F::Elem> C;
  C.n = n;
  C.first_pos = -(n + 1);
  C.label = "koszul";
  std::vector<std::vector<std::vector<int>>> bases(n + 2);
  for (int k = 0; k <= n + 1; ++k) bases[k] = subsets_lex(n + 1, k);
  for (int k = n + 1; k >= 0; --k)
    C.terms.push_back(std::vector<int>(bases[k].size(), -k * d));
  for (int k = n + 1; k >= 1; --k) {
    const auto& src = bases[k];
    const auto& dst = bases[k - 1];
    std::map<std::vector<int>, int> dst_index;
    for (int i = 0; i < (int)dst.size(); ++i) dst_index[dst[i]] = i;
    Mat<FE> dmat((int)dst.size(), (int)src.size());
    for (auto& e : dmat.a) e = zero_form(K, n, 0);
    for (int j = 0; j < (int)src.size(); ++j) {
      const auto& S = src[j];
      for (int pos = 0; pos < k; ++pos) {
        std::vector<int> T;
        T.reserve(k - 1);
        for (int q = 0; q < k; ++q)
          if (q != pos) T.push_back(S[q]);
        int i = dst_index.at(T);
        auto f = forms[S[pos]];
        if (pos % 2 == 1) f = form_neg(K, f);
        dmat.at(i, j) = f;
      }
    }
    C.diffs.push_back(std::move(dmat));
  }
  validate_complex(K, C);
  return C;
}

/* Presentation of the i-th syzygy bundle F_i = coker(L^{n+2-i} -> L^{n+1-i})
   of the Koszul complex, i = 0..n: the truncation [L^{n+1} .. L^{n+1-i}]
   rebased to positions -i..0.  F_0 = O(-(n+1)d) with an empty tail. */
template <class F>
LineComplex<typename F::Elem> koszul_syzygy_presentation(
    const F& K, const LineComplex<typename F::Elem>& koszul, int i) {
  int n = koszul.n;
  if (i < 0 || i > n) throw PreconditionViolated("syzygy index out of range 0..n");
  auto P = sub_complex(koszul, -(n + 1), -(n + 1 - i));
  P.label = "koszul_F" + std::to_string(i);
  validate_complex(K, P);
  return P;
}

/* Presentation of the structure sheaf by the positive-twist tail of the
   Koszul complex: coker(L^2 -> L^1) is O since the forms have no common
   zero.  Positions -n..0 with rightmost term O(-d)^{n+1}. */
template <class F>
LineComplex<typename F::Elem> koszul_structure_presentation(
    const F& K, const LineComplex<typename F::Elem>& koszul) {
  int n = koszul.n;
  auto P = sub_complex(koszul, -(n + 1), -1);
  P.label = "koszul_O";
  validate_complex(K, P);
  return P;
}

/* Twist multiplicities per position: (position, twist, count) triples in
   ascending position then ascending twist.  The shape invariant of a
   resolution, used for purity and symmetry checks. */
struct BettiEntry {
  int position;
  int twist;
  int count;
  bool operator==(const BettiEntry& o) const {
    return position == o.position && twist == o.twist && count == o.count;
  }
};

template <class E>
std::vector<BettiEntry> betti_profile(const LineComplex<E>& C) {
  std::vector<BettiEntry> out;
  for (int p = C.first_pos; p <= C.last_pos(); ++p) {
    std::map<int, int> counts;
    for (int a : C.term_at(p)) counts[a]++;
    for (auto& [tw, c] : counts) out.push_back({p, tw, c});
  }
  return out;
}

/* A complex is pure when each position carries a single twist. */
template <class E>
bool is_pure(const LineComplex<E>& C) {
  for (auto& t : C.terms) {
    if (t.empty()) continue;
    for (int a : t)
      if (a != t[0]) return false;
  }
  return true;
}

/* ----- compressed artinian gorenstein resolutions -----

   A generic form f of degree 2t in n+1 dual variables has an apolar
   algebra A = R / Ann(f) with the largest possible Hilbert function
   dim A_k = min(dim R_k, dim R_{2t-k}), the annihilator generated in
   degree t+1, and a pure minimal free resolution

     0 -> R(-2t-n-1) -> R(-t-n)^{a_n} -> ... -> R(-t-1)^{a_1} -> R,

   self-dual up to the twist -(2t+n+1).  The builder samples f, certifies
   every claim it relies on, and resamples on failure. */

inline std::vector<int> gorenstein_degree_sequence(int n, int t) {
  std::vector<int> d{0};
  for (int i = 1; i <= n; ++i) d.push_back(t + i);
  d.push_back(2 * t + n + 1);
  return d;
}

/* Multiplicity of the i-th step, 1 <= i <= n. */
inline long long gorenstein_alpha(int n, int t, int i) {
  if (i < 1 || i > n) throw PreconditionViolated("gorenstein_alpha: i in 1..n");
  return binomial(t + i - 1, i - 1) * binomial(t + n + 1, n + 1 - i) -
         binomial(t + n - i, n + 1 - i) * binomial(t + n, i - 1);
}

inline std::vector<long long> gorenstein_alphas(int n, int t) {
  std::vector<long long> a(n + 1, 0);
  for (int i = 1; i <= n; ++i) a[i] = gorenstein_alpha(n, t, i);
  return a;
}

/* Catalecticant certificate: the apolar algebra of f has the compressed
   Hilbert function iff every contraction map R_k -> R_{2t-k} against f
   has full rank. */
template <class F>
bool compressed_hf_holds(const F& K, const Form<typename F::Elem>& f, int t) {
  int n = f.n;
  for (int k = 0; k <= 2 * t; ++k) {
    auto M = contraction_matrix(K, f, k);
    long long want = std::min(dim_forms(n, k), dim_forms(n, 2 * t - k));
    if (mat_rank(K, M) != want) return false;
  }
  return true;
}

/* Kernel of the differential leaving position p on degree-u pieces,
   reassembled as a block of columns over the ring: column j is a tuple of
   forms, one per summand of the term at p, of degree u plus that
   summand's twist. */
template <class F>
Mat<Form<typename F::Elem>> graded_kernel_columns(const F& K,
                                                  const LineComplex<typename F::Elem>& C, int p,
                                                  int u) {
  using Elem = typename F::Elem;
  auto M = graded_diff_matrix(K, C, p, u);
  auto kb = kernel_basis(K, M);
  const auto& src = C.term_at(p);
  Mat<Form<Elem>> out((int)src.size(), kb.cols);
  for (auto& f : out.a) f = zero_form(K, C.n, 0);
  int off = 0;
  for (size_t c = 0; c < src.size(); ++c) {
    int dc = u + src[c];
    const auto& MB = monomial_basis(C.n, dc);
    int dim = (int)MB.mons.size();
    for (int j = 0; j < kb.cols; ++j) {
      std::vector<std::pair<std::vector<int>, Elem>> terms;
      for (int m = 0; m < dim; ++m) {
        const auto& x = kb.at(off + m, j);
        if (!K.is_zero(x)) terms.push_back({MB.mons[m], x});
      }
      if (!terms.empty()) out.at((int)c, j) = normalize_form(K, C.n, dc, terms);
    }
    off += dim;
  }
  return out;
}

template <class F>
struct GorensteinResolution {
  int n = 0;
  int t = 0;
  Form<typename F::Elem> dual_form;
  LineComplex<typename F::Elem> full;  // positions -(n+1)..0
  std::vector<long long> alpha;        // alpha[i] valid for i = 1..n
};

template <class F>
GorensteinResolution<F> gorenstein_resolution(const F& K, Rng& rng, int n, int t,
                                              int retries = 8) {
  using Elem = typename F::Elem;
  if (n < 1 || t < 1) throw PreconditionViolated("gorenstein_resolution: n >= 1, t >= 1");
  auto alpha = gorenstein_alphas(n, t);
  const int socle_twist = 2 * t + n + 1;

  std::string last_fail = "no sampled dual form produced a compressed apolar algebra";
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto f = random_form(K, rng, n, 2 * t);
    if (!compressed_hf_holds(K, f, t)) continue;

    // generators of the annihilator: degree-(t+1) forms killed by
    // contraction against f
    auto gen_cols = kernel_basis(K, contraction_matrix(K, f, t + 1));
    if (gen_cols.cols != alpha[1])
      throw BettiMismatch("annihilator generator count " + std::to_string(gen_cols.cols) +
                          " does not match the expected " + std::to_string(alpha[1]));

    LineComplex<Elem> C;
    C.n = n;
    C.first_pos = -1;
    C.label = "gorenstein_n" + std::to_string(n) + "_t" + std::to_string(t);
    C.terms.push_back(std::vector<int>((size_t)alpha[1], -t - 1));
    C.terms.push_back({0});
    {
      const auto& MB = monomial_basis(n, t + 1);
      Mat<Form<Elem>> d(1, gen_cols.cols);
      for (int j = 0; j < gen_cols.cols; ++j) {
        std::vector<std::pair<std::vector<int>, Elem>> terms;
        for (int m = 0; m < gen_cols.rows; ++m)
          if (!K.is_zero(gen_cols.at(m, j))) terms.push_back({MB.mons[m], gen_cols.at(m, j)});
        d.at(0, j) = normalize_form(K, n, t + 1, terms);
      }
      C.diffs.push_back(std::move(d));
    }

    // the ideal spanned by these generators must realize the compressed
    // Hilbert function in every degree through 2t+1; since the quotient
    // algebra is generated in degree one, vanishing at 2t+1 pins it to
    // zero beyond, so this certifies the ideal equals the annihilator
    bool hf_ok = true;
    for (int u = 0; u <= 2 * t + 1 && hf_ok; ++u) {
      long long want = (u <= 2 * t) ? std::min(dim_forms(n, u), dim_forms(n, 2 * t - u)) : 0;
      if (coker_piece_dim(K, C, u) != want) hf_ok = false;
    }
    if (!hf_ok) {
      last_fail = "ideal generated in degree t+1 missed the compressed hilbert function";
      continue;
    }

    // linear steps: generators of the i-th syzygies all sit in degree t+i
    bool step_ok = true;
    for (int i = 2; i <= n && step_ok; ++i) {
      auto cols = graded_kernel_columns(K, C, C.first_pos, t + i);
      if (cols.cols != alpha[i]) {
        last_fail = "syzygy count " + std::to_string(cols.cols) + " at step " +
                    std::to_string(i) + " does not match the expected " +
                    std::to_string(alpha[i]);
        step_ok = false;
        break;
      }
      C.terms.insert(C.terms.begin(), std::vector<int>((size_t)alpha[i], -t - i));
      C.diffs.insert(C.diffs.begin(), std::move(cols));
      C.first_pos -= 1;
    }
    if (!step_ok) continue;

    // the last syzygy jumps t+1 degrees; purity demands nothing in between
    bool pure_ok = true;
    for (int u = t + n + 1; u <= 2 * t + n && pure_ok; ++u) {
      auto M = graded_diff_matrix(K, C, C.first_pos, u);
      if (term_piece_dim(C, C.first_pos, u) - mat_rank(K, M) != 0) pure_ok = false;
    }
    if (!pure_ok) {
      last_fail = "intermediate-degree syzygy before the socle step";
      continue;
    }
    auto last = graded_kernel_columns(K, C, C.first_pos, socle_twist);
    if (last.cols != 1) {
      last_fail = "socle step multiplicity " + std::to_string(last.cols) + ", expected 1";
      continue;
    }
    C.terms.insert(C.terms.begin(), std::vector<int>{-socle_twist});
    C.diffs.insert(C.diffs.begin(), std::move(last));
    C.first_pos -= 1;

    validate_complex(K, C);
    GorensteinResolution<F> out;
    out.n = n;
    out.t = t;
    out.dual_form = f;
    out.full = std::move(C);
    out.alpha = std::move(alpha);
    return out;
  }
  throw RetriesExhausted(last_fail);
}

/* Presentation of the i-th syzygy bundle of the gorenstein resolution,
   mirroring the koszul accessor: the truncation from the socle term
   through position -(n+1-i), rebased to -i..0.  F_n presents the
   structure sheaf through the annihilator ideal. */
template <class F>
LineComplex<typename F::Elem> gorenstein_syzygy_presentation(
    const F& K, const LineComplex<typename F::Elem>& full, int i) {
  int n = full.n;
  if (i < 0 || i > n) throw PreconditionViolated("syzygy index out of range 0..n");
  auto P = sub_complex(full, -(n + 1), -(n + 1 - i));
  P.label = "gorenstein_F" + std::to_string(i);
  validate_complex(K, P);
  return P;
}

/* ----- towers of prescribed homological dimension -----

   Start from E_1 = coker(O(-d0) -> O^(n+1)) on a regular sequence, which
   has homological dimension one, then repeatedly embed the current bundle
   into a sum of 2n twisted line bundles and pass to the cokernel:

     0 -> E_(j-1) -> O(d_j)^(2n) -> E_j -> 0.

   Each splice shifts intermediate cohomology up one row, raising the
   homological dimension by one while the rank stays n.  The cover twist
   d_j must clear both the previous twist and the regularity of the dual
   of E_(j-1), and must leave at least 2n independent maps to build the
   embedding from; the smallest such twist is computed and enforced. */

template <class F>
struct AnyhdTower {
  int n = 0;
  int d0 = 1;
  int levels = 0;
  std::vector<LineComplex<typename F::Elem>> stages;  // stages[j-1] presents E_j
  std::vector<int> cover_twists;                      // 0, d_2, ..., d_l
  std::vector<int> dual_regs;                         // regularity cleared per splice
};

template <class F>
AnyhdTower<F> anyhd_tower(const F& K, Rng& rng, int n, int l, int d0 = 1,
                          const std::vector<int>& schedule = {}, int samples = 30,
                          int retries = 4) {
  using Elem = typename F::Elem;
  if (n < 2 || l < 1 || l > n - 1)
    throw PreconditionViolated("anyhd_tower: need n >= 2 and 1 <= l <= n-1");
  if (d0 < 1) throw PreconditionViolated("anyhd_tower: d0 >= 1");
  if (!schedule.empty() && (int)schedule.size() != l - 1)
    throw PreconditionViolated("anyhd_tower: schedule needs one twist per splice");

  AnyhdTower<F> T;
  T.n = n;
  T.d0 = d0;
  T.levels = l;

  // a regular sequence has empty common zero locus, so the column map is
  // injective on every fiber and the cokernel is a bundle of rank n
  auto fs = random_regular_sequence(K, rng, n, d0);
  LineComplex<Elem> P;
  P.n = n;
  P.first_pos = -1;
  P.terms.push_back({-d0});
  P.terms.push_back(std::vector<int>(n + 1, 0));
  Mat<Form<Elem>> d0col(n + 1, 1);
  for (int i = 0; i <= n; ++i) d0col.at(i, 0) = fs[i];
  P.diffs.push_back(std::move(d0col));
  P.label = "anyhd_stage1";
  validate_complex(K, P);
  T.stages.push_back(std::move(P));
  T.cover_twists.push_back(0);

  for (int j = 2; j <= l; ++j) {
    const auto& prev = T.stages.back();
    int d_prev = T.cover_twists.back();
    int D = dual_regularity(K, prev);
    T.dual_regs.push_back(D);
    int minimal = std::max(d_prev, D) + 1;
    HomLiftSpace<F> lifts = hom_lift_space(K, prev, trivial_presentation<Elem>(n, {minimal}));
    while (lifts.dim < 2 * n) {
      if (minimal > std::max(d_prev, D) + 65)
        throw RetriesExhausted("anyhd_tower: no twist with enough sections in scan range");
      ++minimal;
      lifts = hom_lift_space(K, prev, trivial_presentation<Elem>(n, {minimal}));
    }
    int want = schedule.empty() ? minimal : schedule[j - 2];
    if (want < minimal)
      throw ScheduleTooTight("stage " + std::to_string(j) + " cover twist " +
                                 std::to_string(want) + " is below the minimal admissible " +
                                 std::to_string(minimal),
                             minimal);
    if (want > minimal) lifts = hom_lift_space(K, prev, trivial_presentation<Elem>(n, {want}));

    // random rows of the lift space; resample until the induced map out of
    // the cokernel is injective on every sampled fiber
    int r0 = (int)prev.term_at(0).size();
    Mat<Form<Elem>> L(2 * n, r0);
    bool ok = false;
    for (int attempt = 0; attempt < retries && !ok; ++attempt) {
      for (int r = 0; r < 2 * n; ++r) {
        for (int c = 0; c < r0; ++c) L.at(r, c) = zero_form(K, n, want - prev.term_at(0)[c]);
        for (const auto& b : lifts.basis) {
          auto coef = K.sample(rng);
          if (K.is_zero(coef)) continue;
          for (int c = 0; c < r0; ++c) {
            const auto& f = b.at(0, c);
            if (f.is_zero()) continue;
            auto scaled = form_scale(K, f, coef);
            L.at(r, c) = L.at(r, c).is_zero() ? scaled : form_add(K, L.at(r, c), scaled);
          }
        }
      }
      ok = true;
      Rng local = rng.fork(0xa17d0000u + (uint64_t)j * 131 + attempt);
      for (int s = 0; s < samples && ok; ++s) {
        auto pt = random_point(K, local, n);
        auto Dp = fiber_matrix(K, prev, -1, pt);
        Mat<Elem> Lp(2 * n, r0);
        for (int r = 0; r < 2 * n; ++r)
          for (int c = 0; c < r0; ++c) {
            const auto& f = L.at(r, c);
            Lp.at(r, c) = f.is_zero() ? K.zero() : eval_form(K, f, pt);
          }
        auto kb = kernel_basis(K, Lp);
        if (kb.cols == 0) continue;
        // vectors killed by the lift must already lie in the presented image
        long long base = mat_rank(K, Dp);
        Mat<Elem> joined = hstack(Dp, kb);
        if (mat_rank(K, joined) != base) ok = false;
      }
    }
    if (!ok)
      throw FiberInjectivityFailed("anyhd_tower stage " + std::to_string(j) +
                                   ": sampled fiber with kernel outside the image");
    auto next = splice_cokernel(K, prev, L, std::vector<int>(2 * n, want),
                                "anyhd_stage" + std::to_string(j));
    T.stages.push_back(std::move(next));
    T.cover_twists.push_back(want);
  }
  return T;
}

}  // namespace pureres

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "pureres/field.hpp"
#include "pureres/util.hpp"

namespace pureres {

/* Dense row-major matrix over a field context.  Deterministic elimination
   (fixed pivot order: leftmost column, topmost nonzero row) so ranks and
   kernel bases are reproducible bit for bit. */
template <class E>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

  E& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const E& at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

template <class F>
Mat<typename F::Elem> identity_mat(const F& K, int n) {
  Mat<typename F::Elem> m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = K.one();
  return m;
}

template <class F>
Mat<typename F::Elem> mat_mul(const F& K, const Mat<typename F::Elem>& A,
                              const Mat<typename F::Elem>& B) {
  if (A.cols != B.rows)
    throw DimensionMismatch("product: " + std::to_string(A.cols) + " vs " + std::to_string(B.rows));
  Mat<typename F::Elem> C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const auto& aik = A.at(i, k);
      if (K.is_zero(aik)) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = K.add(C.at(i, j), K.mul(aik, B.at(k, j)));
    }
  return C;
}

template <class E>
Mat<E> mat_transpose(const Mat<E>& A) {
  Mat<E> T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

template <class E>
Mat<E> hstack(const Mat<E>& A, const Mat<E>& B) {
  if (A.rows != B.rows) throw DimensionMismatch("hstack row mismatch");
  Mat<E> C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

template <class E>
Mat<E> vstack(const Mat<E>& A, const Mat<E>& B) {
  if (A.cols != B.cols) throw DimensionMismatch("vstack col mismatch");
  Mat<E> C(A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

template <class F>
bool mat_is_zero(const F& K, const Mat<typename F::Elem>& A) {
  for (const auto& x : A.a)
    if (!K.is_zero(x)) return false;
  return true;
}

/* Reduced row echelon form in place; returns pivot column list.
   Pivot choice: scan columns left to right, take the topmost unused row
   with a nonzero entry. */
template <class F>
std::vector<int> rref(const F& K, Mat<typename F::Elem>& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (!K.is_zero(M.at(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    auto inv = K.inv(M.at(r, c));
    for (int j = c; j < M.cols; ++j) M.at(r, j) = K.mul(M.at(r, j), inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || K.is_zero(M.at(i, c))) continue;
      auto f = M.at(i, c);
      for (int j = c; j < M.cols; ++j)
        M.at(i, j) = K.sub(M.at(i, j), K.mul(f, M.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

namespace detail {

struct Barrett {
  uint64_t p;
  uint64_t magic;  // floor(2^64 / p)
  explicit Barrett(uint64_t prime) : p(prime) {
    magic = (uint64_t)((((__uint128_t)1) << 64) / prime);
  }
  uint64_t reduce(uint64_t x) const {
    uint64_t q = (uint64_t)(((__uint128_t)x * magic) >> 64);
    uint64_t r = x - q * p;
    if (r >= p) r -= p;
    return r;
  }
};

/* Forward elimination over F_p with groups of up to 4 pivots per sweep.
   Rows below the group are updated against all group pivots in one pass
   with a single Barrett reduction per element (valid for p < 2^30).
   Destroys M.  Returns rank. */
inline int rank_fp_blocked(const Fp& K, Mat<uint32_t>& M) {
  const uint64_t p = K.characteristic();
  Barrett bar(p);
  const int rows = M.rows, cols = M.cols;
  int r = 0, c = 0;
  std::vector<uint32_t> factors;  // per-row factors vs group pivots
  while (r < rows && c < cols) {
    const int B = std::min(4, rows - r);
    int npiv = 0;
    int pivcol[4];
    // factors[(i - r) * 4 + k]: elimination factor of row i against group pivot k
    factors.assign((size_t)(rows - r) * 4, 0);
    while (npiv < B && c < cols) {
      // Find pivot for this column using values updated against the group so far.
      int found = -1;
      uint32_t val = 0;
      for (int i = r + npiv; i < rows; ++i) {
        uint64_t acc = M.at(i, c);
        const uint32_t* f = &factors[(size_t)(i - r) * 4];
        for (int k = 0; k < npiv; ++k)
          acc += (uint64_t)f[k] * (p - M.at(r + k, c) % p);
        uint32_t v = (uint32_t)bar.reduce(acc);
        if (v != 0) { found = i; val = v; break; }
      }
      if (found < 0) { ++c; continue; }
      // Fully update the chosen row against the group, then swap it in.
      {
        int i = found;
        const uint32_t* f = &factors[(size_t)(i - r) * 4];
        bool any = false;
        for (int k = 0; k < npiv; ++k) any = any || f[k] != 0;
        if (any) {
          for (int j = c; j < cols; ++j) {
            uint64_t acc = M.at(i, j);
            for (int k = 0; k < npiv; ++k)
              acc += (uint64_t)f[k] * (p - M.at(r + k, j));
            M.at(i, j) = (uint32_t)bar.reduce(acc);
          }
        }
        for (int j = 0; j < cols; ++j) std::swap(M.at(i, j), M.at(r + npiv, j));
        std::swap_ranges(&factors[(size_t)(found - r) * 4], &factors[(size_t)(found - r) * 4 + 4],
                         &factors[(size_t)(npiv) * 4]);
        M.at(r + npiv, c) = val;  // updated leading value
      }
      // Record factors of all lower rows against the new pivot.
      uint32_t inv = K.inv(val);
      for (int i = r + npiv + 1; i < rows; ++i) {
        uint64_t acc = M.at(i, c);
        const uint32_t* f = &factors[(size_t)(i - r) * 4];
        for (int k = 0; k < npiv; ++k)
          acc += (uint64_t)f[k] * (p - M.at(r + k, c) % p);
        uint32_t v = (uint32_t)bar.reduce(acc);
        factors[(size_t)(i - r) * 4 + npiv] = K.mul(v, inv);
      }
      pivcol[npiv] = c;
      ++npiv;
      ++c;
    }
    if (npiv == 0) break;  // columns exhausted
    // Apply the whole group to the remaining rows in one sweep.
    const int j0 = pivcol[0];
    for (int i = r + npiv; i < rows; ++i) {
      const uint32_t* f = &factors[(size_t)(i - r) * 4];
      bool any = false;
      for (int k = 0; k < npiv; ++k) any = any || f[k] != 0;
      if (!any) continue;
      uint32_t fn[4];
      for (int k = 0; k < npiv; ++k) fn[k] = f[k] == 0 ? 0 : (uint32_t)(p - f[k]);
      uint32_t* row = &M.at(i, 0);
      if (npiv == 4) {
        const uint32_t* p0 = &M.at(r + 0, 0);
        const uint32_t* p1 = &M.at(r + 1, 0);
        const uint32_t* p2 = &M.at(r + 2, 0);
        const uint32_t* p3 = &M.at(r + 3, 0);
        for (int j = j0; j < cols; ++j) {
          uint64_t acc = row[j];
          acc += (uint64_t)fn[0] * p0[j];
          acc += (uint64_t)fn[1] * p1[j];
          acc += (uint64_t)fn[2] * p2[j];
          acc += (uint64_t)fn[3] * p3[j];
          row[j] = (uint32_t)bar.reduce(acc);
        }
      } else {
        for (int j = j0; j < cols; ++j) {
          uint64_t acc = row[j];
          for (int k = 0; k < npiv; ++k) acc += (uint64_t)fn[k] * M.at(r + k, j);
          row[j] = (uint32_t)bar.reduce(acc);
        }
      }
    }
    r += npiv;
  }
  return r;
}

template <class F>
int rank_generic(const F& K, Mat<typename F::Elem> M) {
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (!K.is_zero(M.at(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    auto inv = K.inv(M.at(r, c));
    for (int i = r + 1; i < M.rows; ++i) {
      if (K.is_zero(M.at(i, c))) continue;
      auto f = K.mul(M.at(i, c), inv);
      for (int j = c; j < M.cols; ++j)
        M.at(i, j) = K.sub(M.at(i, j), K.mul(f, M.at(r, j)));
    }
    ++r;
  }
  return r;
}

}  // namespace detail

template <class F>
int mat_rank(const F& K, const Mat<typename F::Elem>& A) {
  return detail::rank_generic(K, A);
}

inline int mat_rank(const Fp& K, const Mat<uint32_t>& A) {
  if (K.characteristic() < (1u << 30)) {
    Mat<uint32_t> M = A;
    return detail::rank_fp_blocked(K, M);
  }
  return detail::rank_generic(K, A);
}

/* Basis of the right kernel {x : Ax = 0}; one column per basis vector.
   Free columns are taken in ascending order, so the output is canonical. */
template <class F>
Mat<typename F::Elem> kernel_basis(const F& K, const Mat<typename F::Elem>& A) {
  Mat<typename F::Elem> M = A;
  std::vector<int> piv = rref(K, M);
  int rank = (int)piv.size();
  std::vector<bool> is_piv(A.cols, false);
  for (int c : piv) is_piv[c] = true;
  Mat<typename F::Elem> Kb(A.cols, A.cols - rank);
  int out = 0;
  for (int c = 0; c < A.cols; ++c) {
    if (is_piv[c]) continue;
    Kb.at(c, out) = K.one();
    for (int r = 0; r < rank; ++r) Kb.at(piv[r], out) = K.neg(M.at(r, c));
    ++out;
  }
  return Kb;
}

}  // namespace pureres

#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pureres/matrix.hpp"
#include "pureres/util.hpp"

namespace pureres {

/* Homogeneous coordinate ring of P^n: polynomials in x_0..x_n graded by
   total degree.  Monomials of a fixed degree are ordered in descending
   graded reverse lexicographic order (x_0 > ... > x_n), the same order a
   computer algebra system lists them in, so bases are canonical. */

inline long long dim_forms(int n, int d) {
  if (d < 0) return 0;
  return binomial(n + d, n);
}

struct MonoBasis {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> mons;          // exponent vectors, grevlex descending
  std::map<std::vector<int>, int> index_of;    // exponent vector -> position
};

namespace detail {

inline void gen_grevlex(int nvars_total, int var_hi, int deg,
                        std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  // Monomials in x_0..x_{var_hi} of degree `deg`, grevlex descending:
  // group by ascending exponent of the last variable, recurse on the rest.
  if (var_hi == 0) {
    cur[0] = deg;
    out.push_back(cur);
    cur[0] = 0;
    return;
  }
  for (int e = 0; e <= deg; ++e) {
    cur[var_hi] = e;
    gen_grevlex(nvars_total, var_hi - 1, deg - e, cur, out);
  }
  cur[var_hi] = 0;
}

}  // namespace detail

inline const MonoBasis& monomial_basis(int n, int d) {
  static std::map<std::pair<int, int>, MonoBasis> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (n < 0 || d < 0) throw PreconditionViolated("monomial_basis: n >= 0, d >= 0 required");
  MonoBasis b;
  b.n = n;
  b.d = d;
  std::vector<int> cur(n + 1, 0);
  detail::gen_grevlex(n + 1, n, d, cur, b.mons);
  for (int i = 0; i < (int)b.mons.size(); ++i) b.index_of[b.mons[i]] = i;
  return cache.emplace(key, std::move(b)).first->second;
}

/* A homogeneous form: terms are (exponent vector, coefficient), kept
   normalized (basis order, no zero coefficients, no duplicates). */
template <class E>
struct Form {
  int n = 0;
  int degree = 0;
  std::vector<std::pair<std::vector<int>, E>> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Form&) const = default;
};

template <class F>
Form<typename F::Elem> normalize_form(const F& K, int n, int degree,
                                      std::vector<std::pair<std::vector<int>, typename F::Elem>> raw) {
  Form<typename F::Elem> f;
  f.n = n;
  f.degree = degree;
  if (raw.empty()) return f;
  const MonoBasis& basis = monomial_basis(n, degree);
  std::map<int, typename F::Elem> acc;
  for (auto& [exp, c] : raw) {
    if ((int)exp.size() != n + 1)
      throw SchemaViolation("form term has wrong variable count");
    int total = 0;
    for (int e : exp) {
      if (e < 0) throw SchemaViolation("negative exponent in form term");
      total += e;
    }
    if (total != degree) throw SchemaViolation("form term degree mismatch");
    auto it = basis.index_of.find(exp);
    if (it == basis.index_of.end()) throw SchemaViolation("unknown monomial");
    auto [pos, inserted] = acc.emplace(it->second, c);
    if (!inserted) pos->second = K.add(pos->second, c);
  }
  for (auto& [idx, c] : acc)
    if (!K.is_zero(c)) f.terms.emplace_back(basis.mons[idx], c);
  return f;
}

template <class F>
Form<typename F::Elem> zero_form(const F&, int n, int degree) {
  Form<typename F::Elem> f;
  f.n = n;
  f.degree = degree;
  return f;
}

template <class F>
Form<typename F::Elem> monomial_form(const F& K, int n, const std::vector<int>& exp) {
  int d = 0;
  for (int e : exp) d += e;
  return normalize_form(K, n, d, {{exp, K.one()}});
}

template <class F>
Form<typename F::Elem> variable_form(const F& K, int n, int i) {
  std::vector<int> exp(n + 1, 0);
  exp[i] = 1;
  return monomial_form(K, n, exp);
}

template <class F>
Form<typename F::Elem> form_scale(const F& K, const Form<typename F::Elem>& f,
                                  const typename F::Elem& s) {
  if (K.is_zero(s)) return zero_form(K, f.n, f.degree);
  Form<typename F::Elem> g = f;
  for (auto& [e, c] : g.terms) c = K.mul(c, s);
  return g;
}

template <class F>
Form<typename F::Elem> form_add(const F& K, const Form<typename F::Elem>& f,
                                const Form<typename F::Elem>& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.n != g.n || f.degree != g.degree)
    throw DimensionMismatch("form_add: mixed degrees or variable counts");
  auto raw = f.terms;
  raw.insert(raw.end(), g.terms.begin(), g.terms.end());
  return normalize_form(K, f.n, f.degree, std::move(raw));
}

template <class F>
Form<typename F::Elem> form_neg(const F& K, const Form<typename F::Elem>& f) {
  Form<typename F::Elem> g = f;
  for (auto& [e, c] : g.terms) c = K.neg(c);
  return g;
}

template <class F>
Form<typename F::Elem> form_mul(const F& K, const Form<typename F::Elem>& f,
                                const Form<typename F::Elem>& g) {
  if (f.n != g.n) throw DimensionMismatch("form_mul: variable count mismatch");
  if (f.is_zero() || g.is_zero()) return zero_form(K, f.n, f.degree + g.degree);
  std::vector<std::pair<std::vector<int>, typename F::Elem>> raw;
  for (auto& [ea, ca] : f.terms)
    for (auto& [eb, cb] : g.terms) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      raw.emplace_back(std::move(e), K.mul(ca, cb));
    }
  return normalize_form(K, f.n, f.degree + g.degree, std::move(raw));
}

template <class F>
bool form_eq(const F&, const Form<typename F::Elem>& f, const Form<typename F::Elem>& g) {
  return f.n == g.n && f.degree == g.degree && f.terms == g.terms;
}

/* Matrix of multiplication by f: R_u -> R_{u + deg f}, in the canonical
   monomial bases.  Columns follow R_u, rows follow R_{u + deg f}.
   Either graded piece may be zero-dimensional. */
template <class F>
Mat<typename F::Elem> mult_matrix(const F& K, const Form<typename F::Elem>& f, int u) {
  int n = f.n;
  int v = u + f.degree;
  int du = (int)dim_forms(n, u);
  int dv = (int)dim_forms(n, v);
  Mat<typename F::Elem> M(dv, du);
  if (du == 0 || dv == 0 || f.is_zero()) return M;
  const MonoBasis& src = monomial_basis(n, u);
  const MonoBasis& dst = monomial_basis(n, v);
  for (int j = 0; j < du; ++j) {
    const auto& m = src.mons[j];
    for (auto& [e, c] : f.terms) {
      std::vector<int> prod(m.size());
      for (size_t i = 0; i < prod.size(); ++i) prod[i] = m[i] + e[i];
      int row = dst.index_of.at(prod);
      M.at(row, j) = K.add(M.at(row, j), c);
    }
  }
  return M;
}

/* Evaluate a form at a point of the base field. */
template <class F>
typename F::Elem eval_form(const F& K, const Form<typename F::Elem>& f,
                           const std::vector<typename F::Elem>& pt) {
  if ((int)pt.size() != f.n + 1) throw DimensionMismatch("eval_form: point size");
  auto acc = K.zero();
  for (auto& [e, c] : f.terms) {
    auto t = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t = K.mul(t, pt[i]);
    acc = K.add(acc, t);
  }
  return acc;
}

/* Apolarity contraction g . f in the divided-power convention:
   x^a . x^b = x^(b-a) when a <= b componentwise, else 0 (no factorials).
   Works in any characteristic. */
template <class F>
Form<typename F::Elem> contract(const F& K, const Form<typename F::Elem>& g,
                                const Form<typename F::Elem>& f) {
  if (g.n != f.n) throw DimensionMismatch("contract: variable count mismatch");
  int dres = f.degree - g.degree;
  if (dres < 0) return zero_form(K, f.n, 0);
  std::vector<std::pair<std::vector<int>, typename F::Elem>> raw;
  for (auto& [eg, cg] : g.terms)
    for (auto& [ef, cf] : f.terms) {
      std::vector<int> e(ef.size());
      bool ok = true;
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = ef[i] - eg[i];
        if (e[i] < 0) { ok = false; break; }
      }
      if (ok) raw.emplace_back(std::move(e), K.mul(cg, cf));
    }
  return normalize_form(K, f.n, dres, std::move(raw));
}

/* Matrix of the contraction pairing against a fixed form F of degree b:
   R_a -> R_{b-a}, g |-> g . F.  Its kernel is the degree-a part of the
   annihilator of F. */
template <class F>
Mat<typename F::Elem> contraction_matrix(const F& K, const Form<typename F::Elem>& f, int a) {
  int n = f.n;
  int b = f.degree;
  int da = (int)dim_forms(n, a);
  int dr = (int)dim_forms(n, b - a);
  Mat<typename F::Elem> M(dr, da);
  if (da == 0 || dr == 0) return M;
  const MonoBasis& src = monomial_basis(n, a);
  const MonoBasis& dst = monomial_basis(n, b - a);
  for (int j = 0; j < da; ++j) {
    const auto& g = src.mons[j];
    for (auto& [e, c] : f.terms) {
      std::vector<int> r(e.size());
      bool ok = true;
      for (size_t i = 0; i < r.size(); ++i) {
        r[i] = e[i] - g[i];
        if (r[i] < 0) { ok = false; break; }
      }
      if (!ok) continue;
      int row = dst.index_of.at(r);
      M.at(row, j) = K.add(M.at(row, j), c);
    }
  }
  return M;
}

template <class F>
Form<typename F::Elem> random_form(const F& K, Rng& rng, int n, int d) {
  const MonoBasis& basis = monomial_basis(n, d);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::pair<std::vector<int>, typename F::Elem>> raw;
    for (auto& m : basis.mons) {
      auto c = K.sample(rng);
      if (!K.is_zero(c)) raw.emplace_back(m, c);
    }
    auto f = normalize_form(K, n, d, std::move(raw));
    if (!f.is_zero()) return f;
  }
  throw RetriesExhausted("random_form kept sampling zero");
}

/* Dimension of the degree-u piece of R / (f_1, ..., f_r):
   dim R_u minus the rank of the combined multiplication map
   (+) R_{u - deg f_i} -> R_u. */
template <class F>
long long hf_quotient(const F& K, const std::vector<Form<typename F::Elem>>& forms, int u) {
  if (forms.empty()) throw PreconditionViolated("hf_quotient: no generators");
  int n = forms[0].n;
  long long du = dim_forms(n, u);
  if (du == 0) return 0;
  Mat<typename F::Elem> big((int)du, 0);
  for (auto& f : forms) {
    if (f.n != n) throw DimensionMismatch("hf_quotient: mixed variable counts");
    int src = u - f.degree;
    if (src < 0) continue;
    big = hstack(big, mult_matrix(K, f, src));
  }
  if (big.cols == 0) return du;
  return du - mat_rank(K, big);
}

/* n+1 homogeneous forms in n+1 variables are a regular sequence exactly
   when the quotient is Artinian; for degrees d_0..d_n it is enough that
   the quotient vanishes in degree sum(d_i - 1) + 1, since the quotient
   ring is generated in degree one. */
template <class F>
bool is_maximal_regular_sequence(const F& K, const std::vector<Form<typename F::Elem>>& forms) {
  if (forms.empty()) return false;
  int n = forms[0].n;
  if ((int)forms.size() != n + 1)
    throw PreconditionViolated("is_maximal_regular_sequence: need exactly n+1 forms");
  int socle = 0;
  for (auto& f : forms) {
    if (f.is_zero()) return false;
    socle += f.degree - 1;
  }
  return hf_quotient(K, forms, socle + 1) == 0;
}

template <class F>
std::vector<Form<typename F::Elem>> coordinate_sequence(const F& K, int n) {
  std::vector<Form<typename F::Elem>> out;
  for (int i = 0; i <= n; ++i) out.push_back(variable_form(K, n, i));
  return out;
}

template <class F>
std::vector<Form<typename F::Elem>> random_regular_sequence(const F& K, Rng& rng, int n, int d,
                                                            int retries = 8) {
  for (int attempt = 0; attempt <= retries; ++attempt) {
    std::vector<Form<typename F::Elem>> forms;
    for (int i = 0; i <= n; ++i) forms.push_back(random_form(K, rng, n, d));
    if (is_maximal_regular_sequence(K, forms)) return forms;
  }
  throw RetriesExhausted("random_regular_sequence: certification kept failing");
}

template <class F>
std::string form_to_string(const F& K, const Form<typename F::Elem>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : f.terms) {
    if (!first) out += " + ";
    first = false;
    out += K.to_string(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*x" + std::to_string(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

}  // namespace pureres

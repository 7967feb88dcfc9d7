#pragma once

#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pureres/cohomology.hpp"
#include "pureres/complexes.hpp"
#include "pureres/kronecker.hpp"
#include "pureres/verdict.hpp"

namespace pureres {

using ordered_json = nlohmann::ordered_json;

/* On-disk format.  A complex is stored with its terms listed from the
   leftmost position to position 0 (every complex the engine emits ends at
   0), each differential as a row-major target-by-source grid of cells, and
   each cell as a list of {"exp", "c"} monomials.  Loading normalizes every
   cell, so writing a loaded file reproduces it byte for byte. */

/* ----- coefficients ----- */

inline ordered_json coeff_to_json(const Fp& K, Fp::Elem a) { return K.to_int(a); }

inline ordered_json coeff_to_json(const Rat&, const Rat::Elem& a) {
  const auto& num = boost::multiprecision::numerator(a);
  const auto& den = boost::multiprecision::denominator(a);
  if (den == 1 && num <= std::numeric_limits<long long>::max() &&
      num >= std::numeric_limits<long long>::min())
    return num.convert_to<long long>();
  return a.str();  // "p/q"
}

inline Fp::Elem coeff_from_json(const Fp& K, const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw SchemaViolation(where + ": coefficient must be an integer in positive characteristic");
  return K.from_int(j.get<long long>());
}

inline Rat::Elem coeff_from_json(const Rat& K, const ordered_json& j, const std::string& where) {
  if (j.is_number_integer()) return K.from_int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rat::Elem(j.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaViolation(where + ": cannot read rational '" + j.get<std::string>() + "'");
    }
  }
  throw SchemaViolation(where + ": coefficient must be an integer or a 'p/q' string");
}

/* ----- presentations and resolutions ----- */

template <class F>
ordered_json presentation_to_json(const F& K, const LineComplex<typename F::Elem>& C) {
  ordered_json j;
  j["ring"] = ordered_json{{"n", C.n}, {"char", (long long)K.characteristic()}};
  j["terms"] = C.terms;
  ordered_json diffs = ordered_json::array();
  for (const auto& d : C.diffs) {
    ordered_json grid = ordered_json::array();
    for (int r = 0; r < d.rows; ++r)
      for (int c = 0; c < d.cols; ++c) {
        ordered_json cell = ordered_json::array();
        for (const auto& [exp, co] : d.at(r, c).terms)
          cell.push_back(ordered_json{{"exp", exp}, {"c", coeff_to_json(K, co)}});
        grid.push_back(std::move(cell));
      }
    diffs.push_back(std::move(grid));
  }
  j["diffs"] = std::move(diffs);
  j["label"] = C.label;
  return j;
}

template <class F>
LineComplex<typename F::Elem> presentation_from_json(const F& K, const ordered_json& j) {
  using Elem = typename F::Elem;
  if (!j.is_object()) throw SchemaViolation("top level: expected an object");
  if (!j.contains("ring") || !j["ring"].is_object())
    throw SchemaViolation("ring: missing object");
  const auto& ring = j["ring"];
  if (!ring.contains("n") || !ring["n"].is_number_integer())
    throw SchemaViolation("ring.n: missing integer");
  const int n = ring["n"].get<int>();
  if (n < 1) throw SchemaViolation("ring.n: need at least 1");
  if (!ring.contains("char") || !ring["char"].is_number_integer())
    throw SchemaViolation("ring.char: missing integer");
  if (ring["char"].get<long long>() != (long long)K.characteristic())
    throw SchemaViolation("ring.char: file has characteristic " +
                          std::to_string(ring["char"].get<long long>()) +
                          ", the session field has " + std::to_string(K.characteristic()));

  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    throw SchemaViolation("terms: missing non-empty array");
  std::vector<std::vector<int>> terms;
  for (size_t k = 0; k < j["terms"].size(); ++k) {
    const auto& tj = j["terms"][k];
    if (!tj.is_array()) throw SchemaViolation("terms[" + std::to_string(k) + "]: expected array");
    std::vector<int> tw;
    for (const auto& x : tj) {
      if (!x.is_number_integer())
        throw SchemaViolation("terms[" + std::to_string(k) + "]: twists must be integers");
      tw.push_back(x.get<int>());
    }
    terms.push_back(std::move(tw));
  }

  if (!j.contains("diffs") || !j["diffs"].is_array())
    throw SchemaViolation("diffs: missing array");
  if (j["diffs"].size() + 1 != terms.size())
    throw SchemaViolation("diffs: expected " + std::to_string(terms.size() - 1) +
                          " differentials for " + std::to_string(terms.size()) + " terms");

  LineComplex<Elem> C;
  C.n = n;
  C.first_pos = -(int)(terms.size() - 1);
  C.terms = terms;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw SchemaViolation("label: expected string");
    C.label = j["label"].get<std::string>();
  }

  for (size_t k = 0; k + 1 < terms.size(); ++k) {
    const auto& src = terms[k];
    const auto& dst = terms[k + 1];
    const auto& gj = j["diffs"][k];
    const std::string dk = "diffs[" + std::to_string(k) + "]";
    if (!gj.is_array() || gj.size() != dst.size() * src.size())
      throw SchemaViolation(dk + ": expected " + std::to_string(dst.size() * src.size()) +
                            " row-major cells");
    Mat<Form<Elem>> d((int)dst.size(), (int)src.size());
    for (size_t r = 0; r < dst.size(); ++r)
      for (size_t c = 0; c < src.size(); ++c) {
        const auto& cell = gj[r * src.size() + c];
        const std::string where = dk + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        if (!cell.is_array()) throw SchemaViolation(where + ": expected a list of monomials");
        int deg = dst[r] - src[c];
        if (cell.empty()) {
          d.at((int)r, (int)c) = zero_form(K, n, std::max(deg, 0));
          continue;
        }
        if (deg < 0)
          throw SchemaViolation(where + ": nonzero entry into a strictly smaller twist");
        std::vector<std::pair<std::vector<int>, Elem>> raw;
        for (const auto& mono : cell) {
          if (!mono.is_object() || !mono.contains("exp") || !mono.contains("c") ||
              !mono["exp"].is_array())
            throw SchemaViolation(where + ": each monomial needs \"exp\" and \"c\"");
          std::vector<int> exp;
          for (const auto& e : mono["exp"]) {
            if (!e.is_number_integer())
              throw SchemaViolation(where + ": exponents must be integers");
            exp.push_back(e.get<int>());
          }
          raw.emplace_back(std::move(exp), coeff_from_json(K, mono["c"], where));
        }
        try {
          d.at((int)r, (int)c) = normalize_form(K, n, deg, std::move(raw));
        } catch (const SchemaViolation& e) {
          throw SchemaViolation(where + ": " + e.what());
        }
      }
    C.diffs.push_back(std::move(d));
  }

  validate_complex(K, C);
  return C;
}

/* ----- representations ----- */

template <class F>
ordered_json rep_to_json(const F& K, const KroneckerRep<typename F::Elem>& R) {
  ordered_json j;
  j["w"] = R.w;
  j["a"] = R.a;
  j["b"] = R.b;
  ordered_json mats = ordered_json::array();
  for (const auto& M : R.mats) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < M.rows; ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < M.cols; ++c) row.push_back(coeff_to_json(K, M.at(r, c)));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  j["mats"] = std::move(mats);
  return j;
}

template <class F>
KroneckerRep<typename F::Elem> rep_from_json(const F& K, const ordered_json& j) {
  using Elem = typename F::Elem;
  if (!j.is_object()) throw SchemaViolation("top level: expected an object");
  for (const char* key : {"w", "a", "b"})
    if (!j.contains(key) || !j[key].is_number_integer())
      throw SchemaViolation(std::string(key) + ": missing integer");
  KroneckerRep<Elem> R;
  R.w = j["w"].get<int>();
  R.a = j["a"].get<int>();
  R.b = j["b"].get<int>();
  if (R.w < 1 || R.a < 1 || R.b < 1)
    throw SchemaViolation("w, a, b must all be positive");
  if (!j.contains("mats") || !j["mats"].is_array() || (int)j["mats"].size() != R.w)
    throw SchemaViolation("mats: expected " + std::to_string(R.w) + " matrices");
  for (int i = 0; i < R.w; ++i) {
    const auto& mj = j["mats"][i];
    const std::string where = "mats[" + std::to_string(i) + "]";
    if (!mj.is_array() || (int)mj.size() != R.b)
      throw SchemaViolation(where + ": expected " + std::to_string(R.b) + " rows");
    Mat<Elem> M(R.b, R.a);
    for (int r = 0; r < R.b; ++r) {
      if (!mj[r].is_array() || (int)mj[r].size() != R.a)
        throw SchemaViolation(where + ": row " + std::to_string(r) + " needs " +
                              std::to_string(R.a) + " entries");
      for (int c = 0; c < R.a; ++c) M.at(r, c) = coeff_from_json(K, mj[r][c], where);
    }
    R.mats.push_back(std::move(M));
  }
  return R;
}

/* ----- verdicts and tables ----- */

inline ordered_json report_to_json(const TheoremReport& R) {
  ordered_json j;
  j["id"] = R.id;
  ordered_json p;
  for (const auto& [k, v] : R.params) p[k] = v;
  j["params"] = std::move(p);
  j["pass"] = R.pass();
  ordered_json vs = ordered_json::array();
  for (const auto& v : R.verdicts)
    vs.push_back(ordered_json{{"claim", v.claim},
                              {"computed", v.computed},
                              {"expected", v.expected},
                              {"status", to_string(v.status)}});
  j["verdicts"] = std::move(vs);
  return j;
}

inline std::string entry_to_string(const CohomEntry& e) {
  if (e.exact()) return std::to_string(e.lo);
  return std::to_string(e.lo) + ".." + std::to_string(e.hi);
}

inline ordered_json table_to_json(const CohomTable& T) {
  ordered_json j;
  j["n"] = T.n;
  j["tmin"] = T.tmin;
  j["tmax"] = T.tmax;
  ordered_json rows = ordered_json::array();
  for (int q = 0; q <= T.n; ++q) {
    ordered_json row = ordered_json::array();
    for (int t = T.tmin; t <= T.tmax; ++t) {
      auto e = T.at(q, t);
      if (e.exact())
        row.push_back(e.lo);
      else
        row.push_back(entry_to_string(e));
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

/* TSV table, top cohomology first, one column per twist. */
inline std::string table_to_tsv(const CohomTable& T) {
  std::string out = "q\\t";
  for (int t = T.tmin; t <= T.tmax; ++t) out += "\t" + std::to_string(t);
  out += "\n";
  for (int q = T.n; q >= 0; --q) {
    out += std::to_string(q);
    for (int t = T.tmin; t <= T.tmax; ++t) out += "\t" + entry_to_string(T.at(q, t));
    out += "\n";
  }
  return out;
}

/* ----- files ----- */

inline ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaViolation(path + ": cannot open");
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaViolation(path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw EngineError("Io", path + ": cannot write");
  out << j.dump(2) << "\n";
}

}  // namespace pureres

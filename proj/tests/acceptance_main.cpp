// Acceptance gate: one line per criterion, exit 0 iff every criterion
// passes.  Runtime budgets are targets, so each line carries the measured
// wall time; a line fails only on the mathematics.  Criteria that draw
// random data record their seed, retry once on failure, and record both
// seeds when they do.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "pureres/drivers.hpp"
#include "pureres/json_io.hpp"

using namespace pureres;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string run_cli(const std::string& args, int& rc) {
  std::string cmd = std::string(PURERES_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    rc = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t m;
  while ((m = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, m);
  int st = pclose(p);
  rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

std::string ljoin(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

/* ----- criterion bodies; each fills a short detail string ----- */

bool c1_cli_tits(std::string& detail) {
  int rc = -1;
  auto out = run_cli("quiver tits --w 35 --a 1 --b 35", rc);
  auto first = out.substr(0, out.find('\n'));
  detail = "cli printed '" + first + "', exit " + std::to_string(rc);
  return rc == 0 && out == "1\n";
}

bool c2_quartic(uint64_t seed, std::string& detail) {
  Fp K(32003);
  Rng rng(seed);
  auto R = random_rep(K, rng, 35, 1, 35);
  auto O = trivial_presentation<Fp::Elem>(3, {0}, "O");
  auto O4 = trivial_presentation<Fp::Elem>(3, {4}, "O(4)");
  auto C = realize(K, R, O, O4);
  auto ext = ext_dims(K, C, C, 3);
  detail = "hom=" + entry_to_string(ext[0]) + " ext2=" + entry_to_string(ext[2]);
  return ext[0].exact() && ext[0].lo == 1 && ext[2].exact() && ext[2].lo == 35;
}

bool c3_euler_identity(uint64_t seed, std::string& detail) {
  Fp K(32003);
  Rng rng(seed);
  int ok = 0;
  const int total = 100;
  for (int s = 0; s < total; ++s) {
    int w = 3 + (int)rng.next_below(3);
    int a = 1 + (int)rng.next_below(6);
    int b = 1 + (int)rng.next_below(6);
    auto R = random_rep(K, rng, w, a, b);
    auto he = rep_hom_ext(K, R, R);
    if (he.hom - he.ext1 == tits_form(w, a, b)) ++ok;
  }
  detail = "hom - ext1 = a^2+b^2-wab on " + std::to_string(ok) + "/" + std::to_string(total) +
           " reps";
  return ok == total;
}

bool c4_koszul(uint64_t seed, std::string& detail) {
  Fp K(32003);
  std::vector<std::string> parts;
  bool all = true;
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    auto R = verify_koszul(K, n, d, seed);
    all = all && R.pass();
    parts.push_back("(" + std::to_string(n) + "," + std::to_string(d) + ") " +
                    (R.pass() ? "pass" : "FAIL"));
  }
  detail = ljoin(parts, ", ");
  return all;
}

bool c5_gorenstein(uint64_t seed, std::string& detail) {
  Fp K(32003);
  auto R = verify_gorenstein(K, 3, 1, seed);
  std::string betti = "?";
  for (const auto& v : R.verdicts)
    if (v.claim.rfind("betti counts", 0) == 0) betti = v.computed;
  detail = "betti " + betti + ", " + std::to_string(R.verdicts.size()) + " verdicts";
  return R.pass();
}

std::string witness_of(const TheoremReport& R) {
  const std::string prefix = "witness group h^";
  for (const auto& v : R.verdicts)
    if (v.claim.rfind(prefix, 0) == 0)
      return v.claim.substr(std::string("witness group ").size()) + "=" + v.computed;
  return "witness missing";
}

bool c6_anyhd(uint64_t seed, std::string& detail) {
  Fp K(32003);
  std::vector<std::string> parts;
  bool all = true;
  for (int l = 1; l <= 3; ++l) {
    auto R = verify_anyhd(K, 4, l, {}, seed);
    all = all && R.pass();
    parts.push_back("l=" + std::to_string(l) + " " + (R.pass() ? "pass" : "FAIL") + " " +
                    witness_of(R));
  }
  detail = ljoin(parts, "; ");
  return all;
}

bool suite_bott(const Fp& K, std::string& note) {
  for (int n = 1; n <= 4; ++n)
    for (int d = -8; d <= 8; ++d) {
      auto P = trivial_presentation<Fp::Elem>(n, {d});
      auto col = sheaf_cohomology(K, P, 0);
      for (int q = 0; q <= n; ++q)
        if (!col[q].exact() || col[q].lo != bott_line(n, q, d)) {
          note = "bott mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d) +
                 " q=" + std::to_string(q);
          return false;
        }
    }
  note = "bott grid n<=4, d in [-8,8]";
  return true;
}

bool suite_koszul_acyclic(const Fp& K, Rng& rng, std::string& note) {
  AcyclicityCertificate cert{"certified regular sequence with empty vanishing locus"};
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    auto C = koszul_complex(K, random_regular_sequence(K, rng, n, d));
    for (int t = -(n + 1) * d - 2; t <= 2; ++t) {
      auto H = hypercohomology(K, C, t);
      for (const auto& v : H.vals)
        if (!v.contains(0)) {
          note = "nonzero hypercohomology at (n,d)=(" + std::to_string(n) + "," +
                 std::to_string(d) + "), twist " + std::to_string(t);
          return false;
        }
      if (complex_chi(C, t) != 0) {
        note = "nonzero euler characteristic at twist " + std::to_string(t);
        return false;
      }
      auto Rz = resolve_with_certificate(H, cert);
      for (const auto& v : Rz.vals)
        if (!v.exact() || v.lo != 0) {
          note = "certificate failed to pin zero";
          return false;
        }
    }
  }
  note = "koszul hypercohomology vanishes";
  return true;
}

bool suite_exactness(const Fp& K, Rng& rng, std::string& note) {
  std::vector<LineComplex<Fp::Elem>> built;
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}})
    built.push_back(koszul_complex(K, random_regular_sequence(K, rng, n, d)));
  built.push_back(gorenstein_resolution(K, rng, 3, 1).full);
  for (int l = 1; l <= 2; ++l) built.push_back(anyhd_tower(K, rng, 4, l).stages.back());

  long long spots = 0;
  for (const auto& C : built) {
    auto ps = interior_positions(C);
    if (ps.empty()) continue;
    auto [ulo, uhi] = default_exactness_window(C);
    auto rep = check_exactness_graded(K, C, ps, ulo, uhi);
    if (!rep.ok) {
      note = "graded homology survives at position " + std::to_string(rep.failures[0].position) +
             ", degree " + std::to_string(rep.failures[0].degree) + " of " + C.label;
      return false;
    }
    spots += (long long)ps.size() * (uhi - ulo + 1);
  }
  note = "graded exactness at " + std::to_string(spots) + " interior spots across " +
         std::to_string(built.size()) + " resolutions";
  return true;
}

bool suite_rank_nullity(const Fp& K, Rng& rng, std::string& note) {
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + (int)rng.next_below(12);
    int cols = 1 + (int)rng.next_below(12);
    Mat<Fp::Elem> A(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) A.at(r, c) = K.sample(rng);
    int rk = mat_rank(K, A);
    auto Kb = kernel_basis(K, A);
    if (rk + Kb.cols != cols) {
      note = "rank " + std::to_string(rk) + " + nullity " + std::to_string(Kb.cols) +
             " != " + std::to_string(cols);
      return false;
    }
    if (Kb.cols > 0) {
      auto Z = mat_mul(K, A, Kb);
      for (int r = 0; r < Z.rows; ++r)
        for (int c = 0; c < Z.cols; ++c)
          if (!K.is_zero(Z.at(r, c))) {
            note = "kernel vector not annihilated";
            return false;
          }
    }
  }
  note = "rank-nullity and kernel annihilation on 40 random matrices";
  return true;
}

bool suite_agreement(const Fp& K, Rng& rng, std::string& note) {
  std::vector<std::pair<int, std::pair<int, int>>> shapes = {
      {2, {1, 3}}, {2, {1, 4}}, {2, {2, 5}}, {2, {2, 6}}, {2, {3, 7}},
      {3, {1, 4}}, {3, {1, 5}}, {3, {2, 6}}, {3, {2, 7}}, {3, {3, 8}}};
  int ok = 0, total = 0;
  for (auto& [n, ab] : shapes) {
    auto E = trivial_presentation<Fp::Elem>(n, {-1}, "O(-1)");
    auto O = trivial_presentation<Fp::Elem>(n, {0}, "O");
    int w = n + 1;
    for (int attempt = 0; attempt < 2; ++attempt) {
      auto R1 = random_rep(K, rng, w, ab.first, ab.second);
      auto R2 = random_rep(K, rng, w, ab.first, ab.second);
      if (!global_injectivity(K, R1, E, O, rng) || !global_injectivity(K, R2, E, O, rng))
        continue;
      auto he = rep_hom_ext(K, R1, R2);
      auto hb = dim_hom(K, realize(K, R1, E, O), realize(K, R2, E, O));
      ++total;
      if (hb.exact() && hb.lo == he.hom) ++ok;
      break;
    }
  }
  note = "rep/bundle hom agreement on " + std::to_string(ok) + "/" + std::to_string(total) +
         " realized instances";
  return total >= 10 && ok == total;
}

bool c7_oracles(uint64_t seed, std::string& detail) {
  Fp K(32003);
  Rng rng(seed);
  bool all = true;
  std::vector<std::string> parts;
  {
    std::string note;
    bool ok = suite_bott(K, note);
    all = all && ok;
    parts.push_back(note + (ok ? "" : " FAIL"));
  }
  {
    std::string note;
    Rng local = rng.fork(0x07b);
    bool ok = suite_koszul_acyclic(K, local, note);
    all = all && ok;
    parts.push_back(note + (ok ? "" : " FAIL"));
  }
  {
    std::string note;
    Rng local = rng.fork(0x07c);
    bool ok = suite_exactness(K, local, note);
    all = all && ok;
    parts.push_back(note + (ok ? "" : " FAIL"));
  }
  {
    std::string note;
    Rng local = rng.fork(0x07d);
    bool ok = suite_rank_nullity(K, local, note);
    all = all && ok;
    parts.push_back(note + (ok ? "" : " FAIL"));
  }
  {
    std::string note;
    Rng local = rng.fork(0x07e);
    bool ok = suite_agreement(K, local, note);
    all = all && ok;
    parts.push_back(note + (ok ? "" : " FAIL"));
  }
  detail = ljoin(parts, "; ");
  return all;
}

bool c8_steiner(uint64_t seed, std::string& detail) {
  Fp K(32003);
  Rng rng(seed);
  auto E = trivial_presentation<Fp::Elem>(3, {-1}, "O(-1)");
  auto O = trivial_presentation<Fp::Elem>(3, {0}, "O");
  std::vector<std::string> parts;
  bool all = true;

  Rng local = rng.fork(0x57e1);
  auto R1 = random_rep(K, local, 4, 2, 7);
  auto R2 = random_rep(K, local, 4, 1, 5);
  if (!global_injectivity(K, R1, E, O, local) || !global_injectivity(K, R2, E, O, local)) {
    detail = "a steiner representation missed the injective locus";
    return false;
  }
  auto ext = ext_dims(K, realize(K, R1, E, O), realize(K, R2, E, O), 3);
  bool vanish = ext[2].exact() && ext[2].lo == 0 && ext[3].exact() && ext[3].lo == 0;
  all = all && vanish;
  parts.push_back("ext2=" + entry_to_string(ext[2]) + " ext3=" + entry_to_string(ext[3]));

  auto Rx = random_rep(K, local, 4, 1, 4);
  auto exc = exceptionality_check(K, realize(K, Rx, E, O));
  all = all && exc.exceptional;
  parts.push_back(std::string("tits-1 instance ") +
                  (exc.exceptional ? "exceptional" : "NOT exceptional"));

  Rng lq = rng.fork(0xc0de);
  auto Rq = random_rep(K, lq, 35, 1, 35);
  auto O4 = trivial_presentation<Fp::Elem>(3, {4}, "O(4)");
  auto excq = exceptionality_check(K, realize(K, Rq, O, O4));
  all = all && !excq.exceptional;
  parts.push_back(std::string("quartic cokernel ") +
                  (excq.exceptional ? "exceptional (should fail)" : "fails exceptionality"));

  detail = ljoin(parts, "; ");
  return all;
}

/* One reseed on failure, both seeds recorded. */
template <class Fn>
bool with_retry(uint64_t seed, Fn f, std::string& detail, std::string& seed_note) {
  std::string d1;
  if (f(seed, d1)) {
    detail = d1;
    seed_note = "seed " + std::to_string(seed);
    return true;
  }
  std::string d2;
  bool ok = f(seed + 1, d2);
  detail = ok ? d2 : d1 + " | retry: " + d2;
  seed_note = "seeds " + std::to_string(seed) + "," + std::to_string(seed + 1) + " (retried)";
  return ok;
}

}  // namespace

int main() {
  uint64_t seed = 0;
  if (const char* s = std::getenv("PURERES_SEED")) seed = std::strtoull(s, nullptr, 10);

  struct Row {
    int id;
    bool pass;
    std::string detail;
    std::string seed_note;
    double secs;
  };
  std::vector<Row> rows;

  auto timed = [&](int id, auto fn, bool seeded) {
    Row r;
    r.id = id;
    double t0 = now_s();
    if (seeded) {
      r.pass = with_retry(seed, fn, r.detail, r.seed_note);
    } else {
      std::string d;
      r.pass = fn(seed, d);
      r.detail = d;
      r.seed_note = "";
    }
    r.secs = now_s() - t0;
    rows.push_back(std::move(r));
  };

  timed(1, [](uint64_t, std::string& d) { return c1_cli_tits(d); }, false);
  timed(2, [](uint64_t s, std::string& d) { return c2_quartic(s, d); }, true);
  timed(3, [](uint64_t s, std::string& d) { return c3_euler_identity(s, d); }, true);
  timed(4, [](uint64_t s, std::string& d) { return c4_koszul(s, d); }, true);
  timed(5, [](uint64_t s, std::string& d) { return c5_gorenstein(s, d); }, true);
  timed(6, [](uint64_t s, std::string& d) { return c6_anyhd(s, d); }, true);
  timed(7, [](uint64_t s, std::string& d) { return c7_oracles(s, d); }, false);
  timed(8, [](uint64_t s, std::string& d) { return c8_steiner(s, d); }, true);

  bool all = true;
  for (const auto& r : rows) {
    all = all && r.pass;
    std::printf("criterion %d: %s  %s  [%.1f s%s%s]\n", r.id, r.pass ? "pass" : "FAIL",
                r.detail.c_str(), r.secs, r.seed_note.empty() ? "" : "; ",
                r.seed_note.c_str());
  }
  std::printf("acceptance: %d/8 pass\n", (int)std::count_if(rows.begin(), rows.end(),
                                                            [](const Row& r) { return r.pass; }));
  return all ? 0 : 1;
}

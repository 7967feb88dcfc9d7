#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pureres/builders.hpp"
#include "pureres/cohomology.hpp"
#include "pureres/homext.hpp"

using namespace pureres;

// independent oracle: a pure resolution of an artinian module with degree
// sequence d_0 < ... < d_s has multiplicities beta_i = beta_0 *
// prod_{j != 0,i} |d_j / (d_j - d_i)|; exact rational arithmetic, with
// integrality asserted
static std::vector<long long> hk_multiplicities(const std::vector<int>& deg) {
  using Q = boost::multiprecision::cpp_rational;
  std::vector<long long> out;
  for (size_t i = 1; i < deg.size(); ++i) {
    Q b = 1;
    for (size_t j = 1; j < deg.size(); ++j) {
      if (j == i) continue;
      b *= Q(deg[j]);
      b /= Q(deg[j] - deg[i]);
    }
    if (b < 0) b = -b;
    REQUIRE(boost::multiprecision::denominator(b) == 1);
    out.push_back(boost::multiprecision::numerator(b).convert_to<long long>());
  }
  return out;
}

TEST_CASE("step multiplicities match the degree-sequence product formula") {
  for (int n = 1; n <= 4; ++n)
    for (int t = 1; t <= 3; ++t) {
      auto seq = gorenstein_degree_sequence(n, t);
      REQUIRE((int)seq.size() == n + 2);
      CHECK(seq.front() == 0);
      CHECK(seq.back() == 2 * t + n + 1);
      auto hk = hk_multiplicities(seq);
      REQUIRE((int)hk.size() == n + 1);
      for (int i = 1; i <= n; ++i) CHECK(gorenstein_alpha(n, t, i) == hk[i - 1]);
      CHECK(hk.back() == 1);  // the socle step is a single line bundle
      // self-duality of the resolution forces a palindromic profile
      for (int i = 1; i <= n; ++i)
        CHECK(gorenstein_alpha(n, t, i) == gorenstein_alpha(n, t, n + 1 - i));
      // the first step counts annihilator generators
      CHECK(gorenstein_alpha(n, t, 1) == dim_forms(n, t + 1) - dim_forms(n, t - 1));
    }

  // named instances
  CHECK(gorenstein_alphas(3, 1) == std::vector<long long>{0, 9, 16, 9});
  CHECK(gorenstein_alphas(3, 2) == std::vector<long long>{0, 16, 30, 16});
  CHECK(gorenstein_alphas(4, 1) == std::vector<long long>{0, 14, 35, 35, 14});

  CHECK_THROWS_AS(gorenstein_alpha(3, 1, 0), PreconditionViolated);
  CHECK_THROWS_AS(gorenstein_alpha(3, 1, 4), PreconditionViolated);
}

TEST_CASE("plane builder produces the expected pure shape") {
  Fp K(32003);
  Rng rng(2601);
  auto G = gorenstein_resolution(K, rng, 2, 1);
  const auto& C = G.full;
  CHECK(C.first_pos == -3);
  CHECK(C.term_at(-3) == std::vector<int>{-5});
  CHECK(C.term_at(-2) == std::vector<int>(5, -3));
  CHECK(C.term_at(-1) == std::vector<int>(5, -2));
  CHECK(C.term_at(0) == std::vector<int>{0});
  CHECK(is_pure(C));

  auto [lo, hi] = default_exactness_window(C);
  CHECK(check_exactness_graded(K, C, interior_positions(C), lo, hi).ok);

  // sheafified, the resolution of an artinian module is exact everywhere
  for (int tw : {-3, -1, 0, 2}) {
    auto H = hypercohomology(K, C, tw);
    for (int k = H.first_k; k <= H.last_k; ++k) CHECK(H.at(k).contains(0));
    CHECK(complex_chi(C, tw) == 0);
  }
}

TEST_CASE("three-space quadric apolar resolution and its syzygy bundles") {
  Fp K(32003);
  Rng rng(7777);
  auto G = gorenstein_resolution(K, rng, 3, 1);
  const auto& C = G.full;

  CHECK(C.term_at(-4) == std::vector<int>{-6});
  CHECK(C.term_at(-3) == std::vector<int>(9, -4));
  CHECK(C.term_at(-2) == std::vector<int>(16, -3));
  CHECK(C.term_at(-1) == std::vector<int>(9, -2));
  CHECK(is_pure(C));

  auto [lo, hi] = default_exactness_window(C);
  CHECK(check_exactness_graded(K, C, interior_positions(C), lo, hi).ok);

  // self-duality: reversing and twisting by the socle degree reproduces
  // the shape exactly
  auto dual = twist_complex(shift_positions(dualize(C), -4), -6);
  CHECK(betti_profile(dual) == betti_profile(C));

  // syzygy bundle ranks from the alternating sums
  auto F1 = gorenstein_syzygy_presentation(K, C, 1);
  auto F2 = gorenstein_syzygy_presentation(K, C, 2);
  auto F3 = gorenstein_syzygy_presentation(K, C, 3);
  CHECK(presented_rank(K, F1, rng) == 8);
  CHECK(presented_rank(K, F2, rng) == 8);
  CHECK(presented_rank(K, F3, rng) == 1);

  // the cokernel of the widest truncation is the annihilator ideal, whose
  // piece dimensions complement the compressed hilbert function
  CHECK(coker_piece_dim(K, F3, 1) == 0);
  CHECK(coker_piece_dim(K, F3, 2) == 9);
  CHECK(coker_piece_dim(K, F3, 3) == 20);
  CHECK(coker_piece_dim(K, F3, 4) == 35);

  // homological dimensions step down the resolution; the last bundle is
  // the structure sheaf and splits
  auto h1 = homological_dimension(K, F1);
  CHECK(h1.hd == 1);
  CHECK(h1.has_witness);
  auto h2 = homological_dimension(K, F2);
  CHECK(h2.hd == 2);
  CHECK(h2.has_witness);
  CHECK(homological_dimension(K, F3).hd == 0);

  CHECK(is_simple(K, F1));
  CHECK(is_simple(K, F2));

  // sections of the twisted duals count the next multiplicity down
  CHECK(hypercohomology(K, dualize(F1), -3).at(0).lo == 16);
  CHECK(hypercohomology(K, dualize(F2), -2).at(0).lo == 9);
}

TEST_CASE("larger multiplicity tables come out of the builder") {
  Fp K(32003);
  Rng rng(31);
  {
    auto G = gorenstein_resolution(K, rng, 3, 2);
    CHECK(G.full.term_at(-3) == std::vector<int>(16, -5));
    CHECK(G.full.term_at(-2) == std::vector<int>(30, -4));
    CHECK(G.full.term_at(-1) == std::vector<int>(16, -3));
    CHECK(G.full.term_at(-4) == std::vector<int>{-8});
    CHECK(is_pure(G.full));
  }
  {
    auto G = gorenstein_resolution(K, rng, 4, 1);
    CHECK(G.full.term_at(-1) == std::vector<int>(14, -2));
    CHECK(G.full.term_at(-2) == std::vector<int>(35, -3));
    CHECK(G.full.term_at(-3) == std::vector<int>(35, -4));
    CHECK(G.full.term_at(-4) == std::vector<int>(14, -5));
    CHECK(G.full.term_at(-5) == std::vector<int>{-7});
  }
  CHECK_THROWS_AS(gorenstein_resolution(K, rng, 0, 1), PreconditionViolated);
  CHECK_THROWS_AS(gorenstein_resolution(K, rng, 3, 0), PreconditionViolated);
}

TEST_CASE("compressed certificate rejects degenerate forms") {
  Fp K(32003);
  // a (2t)-th power of a linear form has catalecticant rank one in every
  // middle degree, far below compressed
  std::vector<int> exp{2, 0, 0, 0};
  auto f = monomial_form(K, 3, exp);
  CHECK_FALSE(compressed_hf_holds(K, f, 1));
  Rng rng(4);
  auto g = random_form(K, rng, 3, 2);
  CHECK(compressed_hf_holds(K, g, 1));
}

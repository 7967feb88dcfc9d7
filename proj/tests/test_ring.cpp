#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pureres/ring.hpp"

using namespace pureres;

namespace {

// Independent grevlex comparator: a > b when the last nonzero entry of
// a - b is negative.  Used as an oracle for the generated basis order.
bool grevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  for (int i = (int)a.size() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

TEST_CASE("form space dimensions") {
  CHECK(dim_forms(2, 0) == 1);
  CHECK(dim_forms(2, 1) == 3);
  CHECK(dim_forms(2, 2) == 6);
  CHECK(dim_forms(3, 4) == 35);
  CHECK(dim_forms(4, 2) == 15);
  CHECK(dim_forms(3, -1) == 0);
  CHECK(dim_forms(3, -5) == 0);
}

TEST_CASE("monomial basis is grevlex descending and complete") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 5; ++d) {
      const MonoBasis& b = monomial_basis(n, d);
      CHECK((long long)b.mons.size() == dim_forms(n, d));
      for (size_t i = 0; i + 1 < b.mons.size(); ++i)
        CHECK(grevlex_greater(b.mons[i], b.mons[i + 1]));
      for (auto& m : b.mons) {
        int tot = 0;
        for (int e : m) tot += e;
        CHECK(tot == d);
      }
    }
}

TEST_CASE("monomial basis explicit order for n=2 d=2") {
  const MonoBasis& b = monomial_basis(2, 2);
  std::vector<std::vector<int>> expect = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                          {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  CHECK(b.mons == expect);
}

TEST_CASE("form normalization merges and drops zeros") {
  Fp K(7);
  std::vector<int> xy = {1, 1, 0}, x2 = {2, 0, 0};
  auto f = normalize_form(K, 2, 2,
                          {{xy, K.from_int(3)}, {xy, K.from_int(4)}, {x2, K.from_int(2)}});
  REQUIRE(f.terms.size() == 1);  // 3+4 = 0 mod 7
  CHECK(f.terms[0].first == x2);
  CHECK_THROWS_AS(normalize_form(K, 2, 2, {{{1, 0, 0}, K.one()}}), SchemaViolation);
  CHECK_THROWS_AS(normalize_form(K, 2, 2, {{{1, 1}, K.one()}}), SchemaViolation);
}

TEST_CASE("multiplication matrices respect products") {
  Fp K(32003);
  Rng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 1 + (int)rng.next_below(3);
    int df = 1 + (int)rng.next_below(2);
    int dg = 1 + (int)rng.next_below(2);
    int u = (int)rng.next_below(3);
    auto f = random_form(K, rng, n, df);
    auto g = random_form(K, rng, n, dg);
    auto left = mult_matrix(K, form_mul(K, f, g), u);
    auto right = mat_mul(K, mult_matrix(K, f, u + dg), mult_matrix(K, g, u));
    CHECK(left.a == right.a);
  }
}

TEST_CASE("multiplication by a nonzero form is injective") {
  Fp K(32003);
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 1 + (int)rng.next_below(3);
    int d = 1 + (int)rng.next_below(3);
    int u = (int)rng.next_below(4);
    auto f = random_form(K, rng, n, d);
    auto M = mult_matrix(K, f, u);
    CHECK(mat_rank(K, M) == (int)dim_forms(n, u));
  }
}

TEST_CASE("evaluation is multiplicative") {
  Fp K(32003);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + (int)rng.next_below(3);
    auto f = random_form(K, rng, n, 1 + (int)rng.next_below(3));
    auto g = random_form(K, rng, n, 1 + (int)rng.next_below(3));
    std::vector<uint32_t> pt(n + 1);
    for (auto& x : pt) x = K.sample(rng);
    CHECK(eval_form(K, form_mul(K, f, g), pt) ==
          K.mul(eval_form(K, f, pt), eval_form(K, g, pt)));
  }
}

TEST_CASE("contraction in the divided power convention") {
  Fp K(32003);
  // x0 . (x0^2 x1) = x0 x1 with coefficient 1, no factorial factors
  auto g = monomial_form(K, 1, {1, 0});
  auto f = monomial_form(K, 1, {2, 1});
  auto r = contract(K, g, f);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].first == std::vector<int>{1, 1});
  CHECK(r.terms[0].second == K.one());
  // degree too high contracts to zero
  auto big = monomial_form(K, 1, {3, 1});
  CHECK(contract(K, big, f).is_zero());
}

TEST_CASE("contraction matrix matches pointwise contraction") {
  Fp K(32003);
  Rng rng(99);
  int n = 2;
  auto F = random_form(K, rng, n, 4);
  int a = 2;
  auto M = contraction_matrix(K, F, a);
  const MonoBasis& src = monomial_basis(n, a);
  const MonoBasis& dst = monomial_basis(n, 2);
  for (int j = 0; j < (int)src.mons.size(); ++j) {
    auto r = contract(K, monomial_form(K, n, src.mons[j]), F);
    std::vector<uint32_t> col(dst.mons.size(), 0);
    for (auto& [e, c] : r.terms) col[dst.index_of.at(e)] = c;
    for (int i = 0; i < M.rows; ++i) CHECK(M.at(i, j) == col[i]);
  }
}

TEST_CASE("annihilator of a power of a linear form") {
  Fp K(32003);
  // F = x0^2 on P^1: ann(F)_1 is spanned by x1 alone
  auto F = monomial_form(K, 1, {2, 0});
  auto M = contraction_matrix(K, F, 1);
  auto kb = kernel_basis(K, M);
  REQUIRE(kb.cols == 1);
  CHECK(K.is_zero(kb.at(0, 0)));
  CHECK(!K.is_zero(kb.at(1, 0)));
}

TEST_CASE("quotient hilbert function for the irrelevant ideal") {
  Fp K(32003);
  auto xs = coordinate_sequence(K, 2);
  CHECK(hf_quotient(K, xs, 0) == 1);
  CHECK(hf_quotient(K, xs, 1) == 0);
  CHECK(hf_quotient(K, xs, 2) == 0);
}

TEST_CASE("quotient hilbert function for one quadric") {
  Fp K(32003);
  Rng rng(7);
  std::vector<Form<uint32_t>> q = {random_form(K, rng, 2, 2)};
  for (int u = 0; u <= 5; ++u)
    CHECK(hf_quotient(K, q, u) == dim_forms(2, u) - dim_forms(2, u - 2));
}

TEST_CASE("regular sequence certification") {
  Fp K(32003);
  auto xs = coordinate_sequence(K, 3);
  CHECK(is_maximal_regular_sequence(K, xs));
  // x0, x0, x1 on P^2 leaves k[x2], not Artinian
  std::vector<Form<uint32_t>> bad = {variable_form(K, 2, 0), variable_form(K, 2, 0),
                                     variable_form(K, 2, 1)};
  CHECK_FALSE(is_maximal_regular_sequence(K, bad));
  CHECK_THROWS_AS(is_maximal_regular_sequence(K, std::vector<Form<uint32_t>>{xs[0]}),
                  PreconditionViolated);
}

TEST_CASE("random regular sequences certify and match the complete intersection profile") {
  Fp K(32003);
  Rng rng(2718);
  auto seq = random_regular_sequence(K, rng, 2, 2);
  REQUIRE(seq.size() == 3);
  // complete intersection of three quadrics in three variables: 1,3,3,1
  CHECK(hf_quotient(K, seq, 0) == 1);
  CHECK(hf_quotient(K, seq, 1) == 3);
  CHECK(hf_quotient(K, seq, 2) == 3);
  CHECK(hf_quotient(K, seq, 3) == 1);
  CHECK(hf_quotient(K, seq, 4) == 0);
}

TEST_CASE("forms over the rationals") {
  Rat Q;
  Rng rng(31);
  auto f = random_form(Q, rng, 2, 2);
  CHECK_FALSE(f.is_zero());
  auto M = mult_matrix(Q, f, 1);
  CHECK(mat_rank(Q, M) == (int)dim_forms(2, 1));
}

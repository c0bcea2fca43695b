#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "weilcliff/derivations.hpp"
#include "weilcliff/errors.hpp"

using namespace weilcliff;

namespace {

Element we(const Word& w) { return Element{{w, Rat(1)}}; }

Element level_part(const AlgebraContext& ctx, const Element& x, long level) {
  Element out;
  for (const auto& [w, c] : x)
    if (ctx.word_level(w) == level) out.emplace(w, c);
  return out;
}

}  // namespace

TEST_CASE("Koszul differential: d(1(x)v) = v(x)1 and d(v(x)1) = 0") {
  AlgebraContext K = make_koszul(1, {"v"});
  StandardOperators ops = standard_operators(K, nullptr, {}, 4);
  CHECK(ops.d.apply(we(K.odd_gen(0))) == we(K.even_gen(0)));
  CHECK(el_is_zero(ops.d.apply(we(K.even_gen(0)))));
  for (const auto& c : ops.certificates) CHECK(c.ok);
}

TEST_CASE("deformed Koszul dim 1, xi = t v: d'(1(x)v) = v(x)1 - t") {
  AlgebraContext K = make_deformed_koszul({{Rat(1)}}, {"v"});
  Rat t(3);
  StandardOperators ops = standard_operators(K, nullptr, {{0, t}}, 4);
  Element want = we(K.even_gen(0));
  el_insert(want, K.one(), -t);
  REQUIRE(ops.dprime.has_value());
  CHECK(ops.dprime->apply(we(K.odd_gen(0))) == want);
}

TEST_CASE("quantized sl2: inner operators satisfy all certificates on window 6") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext Q = make_quantized_weil(L);
  StandardOperators ops = standard_operators(Q, &L, {}, 6);
  for (const auto& c : ops.certificates) {
    CAPTURE(c.relation);
    CHECK(c.ok);
  }
  // iota(e_i) is ad(1 (x) e_i)
  Element r = ops.iota[0].apply(we(Q.odd_gen(2)));  // iota(e) on 1(x)f
  CHECK(r == Element{{Q.one(), 2 * L.form[0][2]}});
}

TEST_CASE("classical Weil sl2: certificates and degree behaviour") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  StandardOperators ops = standard_operators(W, &L, {}, 5);
  for (const auto& c : ops.certificates) {
    CAPTURE(c.relation);
    CHECK(c.ok);
  }
  // d raises degree by exactly 1, iota lowers by 1, L preserves
  wtest::Sampler s(5);
  for (int lvl = 1; lvl <= 4; ++lvl) {
    Element x = s.homogeneous(W, lvl, 2);
    for (const auto& [w, c] : ops.d.apply(x)) CHECK(W.word_level(w) == lvl + 1);
    for (const auto& [w, c] : ops.iota[1].apply(x)) CHECK(W.word_level(w) == lvl - 1);
    for (const auto& [w, c] : ops.lieL[1].apply(x)) CHECK(W.word_level(w) == lvl);
  }
}

TEST_CASE("deformed certificates: d'^2 = -L(xi) classical and quantized") {
  LieAlgebraData L = wtest::load("sl2.json");
  {
    AlgebraContext W = make_weil(L);
    StandardOperators ops = standard_operators(W, &L, {{1, Rat(1)}}, 4);
    for (const auto& c : ops.certificates) {
      CAPTURE(c.relation);
      CHECK(c.ok);
    }
  }
  {
    AlgebraContext Q = make_quantized_weil(L);
    StandardOperators ops = standard_operators(Q, &L, {{1, Rat(2)}}, 4);
    for (const auto& c : ops.certificates) {
      CAPTURE(c.relation);
      CHECK(c.ok);
    }
    // the effective inner deformation is eta = xi-sharp / 2 = (t/4) h for xi = t h
    REQUIRE(ops.eta.size() == 1);
    CHECK(ops.eta.at(1) == Rat(1, 2));
  }
}

TEST_CASE("invariant window of W(sl2)") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  StandardOperators ops = standard_operators(W, &L, {}, 0);
  auto basis = invariant_window(W, ops, 2);
  std::vector<Element> deg1, deg2;
  for (const auto& v : basis) {
    long lv = 0;
    for (const auto& [w, c] : v) lv = std::max(lv, W.word_level(w));
    if (lv == 1) deg1.push_back(v);
    if (lv == 2) deg2.push_back(v);
  }
  // degree 1: span{1 (x) h}; 1 (x) e and 1 (x) f are excluded
  REQUIRE(deg1.size() == 1);
  CHECK(deg1[0].count(W.odd_gen(1)) == 1);
  CHECK(deg1[0].size() == 1);
  // degree 2: span{h (x) 1, 1 (x) e^f}
  CHECK(deg2.size() == 2);
}

TEST_CASE("abelian algebra: invariant window is the whole window") {
  AlgebraContext K = make_koszul(2, {"a", "b"});
  StandardOperators ops = standard_operators(K, nullptr, {}, 0);
  CHECK(invariant_window(K, ops, 3).size() == K.basis_window(3).size());
}

TEST_CASE("deformed differential squares to zero on the invariant window") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  StandardOperators ops = standard_operators(W, &L, {{1, Rat(1)}}, 0);
  for (const auto& v : invariant_window(W, ops, 4))
    CHECK(el_is_zero(ops.dprime->apply(ops.dprime->apply(v))));
}

TEST_CASE("quantized top symbols match the classical Weil structure") {
  // Derived oracle: in the 2B-paired labeling the classical images are
  // d(1 (x) e_a) = e_a (x) 1 + 1 (x) lambda_a with
  // lambda_a = 1/4 sum_b e^b wedge [e_b, e_a]; the filtration-2 part of
  // ad(D)(1 (x) e_a) must reproduce exactly that.
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext Q = make_quantized_weil(L);
  StandardOperators ops = standard_operators(Q, &L, {}, 0);
  for (int a = 0; a < L.dim; ++a) {
    Element got = level_part(Q, ops.d.apply(we(Q.odd_gen(a))), 2);
    Element want = we(Q.even_gen(a));
    for (int b = 0; b < L.dim; ++b) {
      for (const auto& [bb, dual_c] : L.dual[b]) {
        for (const auto& [cc, br_c] : L.bracket(b, a)) {
          if (bb == cc) continue;  // wedge part only
          Word w = Q.one();
          w.mask = (1ull << bb) | (1ull << cc);
          Rat sgn = bb < cc ? Rat(1) : Rat(-1);
          el_insert(want, w, sgn * dual_c * br_c / 4);
        }
      }
    }
    CHECK(got == want);
  }
}

TEST_CASE("xi outside the Cartan span is rejected") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  CHECK_THROWS_AS(standard_operators(W, &L, {{0, Rat(1)}}, 0), ValidationError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "weilcliff/errors.hpp"

using namespace weilcliff;

namespace {

Element we(const Word& w) { return Element{{w, Rat(1)}}; }

}  // namespace

TEST_CASE("build_algebra validates descriptors") {
  AlgebraDescriptor d;
  d.flavor = Flavor::Clifford;
  CHECK_THROWS_AS(build_algebra(d), InvalidDescriptor);
  d.form = std::vector<std::vector<Rat>>{{Rat(0), Rat(1)}, {Rat(2), Rat(0)}};
  CHECK_THROWS_AS(build_algebra(d), InvalidDescriptor);  // not symmetric
  d.form = std::vector<std::vector<Rat>>{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  AlgebraContext c = build_algebra(d);
  CHECK(c.dim == 2);
}

TEST_CASE("Koszul dim 1: generators and degrees") {
  AlgebraContext K = make_koszul(1, {"v"});
  CHECK(K.word_level(K.even_gen(0)) == 2);
  CHECK(K.word_level(K.odd_gen(0)) == 1);
  auto win = K.basis_window(3);
  REQUIRE(win.size() == 4);  // 1, 1(x)v, v(x)1, v(x)v of degrees 0,1,2,3
  CHECK(K.word_level(win[0]) == 0);
  CHECK(K.word_level(win[1]) == 1);
  CHECK(K.word_level(win[2]) == 2);
  CHECK(K.word_level(win[3]) == 3);
}

TEST_CASE("U(sl2): e.f = fe + h in PBW order f<h<e") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext U = make_enveloping(L);
  Element prod = U.mul(we(U.even_gen(0)), we(U.even_gen(2)));  // e * f
  Word fe = U.one();
  fe.exps[0] = 1;
  fe.exps[2] = 1;
  Element want = we(fe);
  el_insert(want, U.even_gen(1), Rat(1));
  CHECK(prod == want);
}

TEST_CASE("exterior square is zero; Clifford square is the form") {
  AlgebraContext E = make_koszul(2, {"a", "b"});
  CHECK(el_is_zero(E.mul(we(E.odd_gen(0)), we(E.odd_gen(0)))));

  AlgebraDescriptor d;
  d.flavor = Flavor::Clifford;
  d.form = std::vector<std::vector<Rat>>{{Rat(7)}};
  AlgebraContext C = build_algebra(d);
  Element sq = C.mul(we(C.odd_gen(0)), we(C.odd_gen(0)));
  CHECK(sq == Element{{C.one(), Rat(7)}});
}

TEST_CASE("Clifford relation: uv + vu = 2B(u,v)") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_quantized_weil(L);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Element anti = el_add(W.mul(we(W.odd_gen(a)), we(W.odd_gen(b))),
                            W.mul(we(W.odd_gen(b)), we(W.odd_gen(a))));
      Element want{{W.one(), 2 * L.form[a][b]}};
      if (L.form[a][b] == 0) want.clear();
      CHECK(anti == want);
    }
}

TEST_CASE("window counts match the closed-form monomial count") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  for (int bound : {0, 1, 2, 5, 8})
    CHECK(static_cast<long>(W.basis_window(bound).size()) == closed_form_window_count(W, bound));
  // degree components of W(sl2): 1 of degree 0, 3 of degree 1, 6 of degree 2
  auto win = W.basis_window(2);
  int d0 = 0, d1 = 0, d2 = 0;
  for (const auto& w : win) {
    long l = W.word_level(w);
    d0 += l == 0;
    d1 += l == 1;
    d2 += l == 2;
  }
  CHECK(d0 == 1);
  CHECK(d1 == 3);  // C(3,1) exterior generators
  CHECK(d2 == 6);  // C(3,1) symmetric + C(3,2) exterior pairs
  AlgebraContext Q = make_quantized_weil(L);
  for (int bound : {0, 3, 6})
    CHECK(static_cast<long>(Q.basis_window(bound).size()) == closed_form_window_count(Q, bound));
  CHECK(Q.basis_window(0).size() == 1);
}

TEST_CASE("associativity on random sparse triples, all flavors") {
  LieAlgebraData L = wtest::load("sl2.json");
  std::vector<AlgebraContext> ctxs;
  ctxs.push_back(make_koszul(2, {"a", "b"}));
  ctxs.push_back(make_deformed_koszul({{Rat(2), Rat(1)}, {Rat(1), Rat(0)}}, {"a", "b"}));
  ctxs.push_back(make_weil(L));
  ctxs.push_back(make_quantized_weil(L));
  ctxs.push_back(make_enveloping(L));
  wtest::Sampler s(42);
  for (const auto& ctx : ctxs) {
    for (int trial = 0; trial < 6; ++trial) {
      Element x = s.element(ctx, 4, 3), y = s.element(ctx, 4, 3), z = s.element(ctx, 4, 3);
      CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
    }
  }
}

TEST_CASE("super-commutativity in graded flavors") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext W = make_weil(L);
  wtest::Sampler s(7);
  for (int lx = 1; lx <= 3; ++lx)
    for (int ly = 1; ly <= 3; ++ly) {
      Element x = s.homogeneous(W, lx, 2), y = s.homogeneous(W, ly, 2);
      int px = el_parity(x), py = el_parity(y);
      if (px == 2 || py == 2 || px == -1 || py == -1) continue;
      Rat sgn = (px == 1 && py == 1) ? Rat(-1) : Rat(1);
      CHECK(W.mul(x, y) == el_scale(W.mul(y, x), sgn));
    }
}

TEST_CASE("PBW reordering terminates with filtration bounded by the input sum") {
  LieAlgebraData L = wtest::load("sl3.json");
  AlgebraContext U = make_enveloping(L);
  wtest::Sampler s(11);
  for (int trial = 0; trial < 5; ++trial) {
    Element x = s.element(U, 6, 2), y = s.element(U, 6, 2);
    long lx = 0, ly = 0;
    for (const auto& [w, c] : x) lx = std::max(lx, U.word_level(w));
    for (const auto& [w, c] : y) ly = std::max(ly, U.word_level(w));
    Element p = U.mul(x, y);
    for (const auto& [w, c] : p) CHECK(U.word_level(w) <= lx + ly);
  }
}

TEST_CASE("multiply never leaves the combined window") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext Q = make_quantized_weil(L);
  wtest::Sampler s(3);
  Element x = s.homogeneous(Q, 3, 3), y = s.homogeneous(Q, 4, 3);
  Element p = Q.mul(x, y);
  for (const auto& [w, c] : p) CHECK(Q.word_level(w) <= 7);
}

TEST_CASE("pretty printer is deterministic and window-ordered") {
  LieAlgebraData L = wtest::load("sl2.json");
  AlgebraContext U = make_enveloping(L);
  Element omega;  // 2fe + h + h^2/2
  Word fe = U.one();
  fe.exps[0] = 1;
  fe.exps[2] = 1;
  el_insert(omega, fe, Rat(2));
  el_insert(omega, U.even_gen(1), Rat(1));
  Word h2 = U.one();
  h2.exps[1] = 2;
  el_insert(omega, h2, Rat(1, 2));
  CHECK(U.str(omega) == "h + 1/2*h^2 + 2*f*e");
}

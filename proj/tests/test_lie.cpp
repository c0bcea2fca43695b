#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "weilcliff/errors.hpp"
#include "weilcliff/lie.hpp"

using namespace weilcliff;

TEST_CASE("sl2 loads and validates") {
  LieAlgebraData L = wtest::load("sl2.json");
  CHECK(L.dim == 3);
  CHECK(L.basis_names[0] == "e");
  // pbw order: nneg < cartan < npos, i.e. f < h < e
  CHECK(L.pbw_order == std::vector<int>({2, 1, 0}));
  // exhaustive Jacobi / invariance already ran in load; spot-check a bracket
  CHECK(L.bracket(0, 2).at(1) == 1);
  CHECK(L.bracket(2, 0).at(1) == -1);
}

TEST_CASE("bad bracket is rejected with a Jacobi witness") {
  // same spec with [e,f] = e instead of h
  std::string text = R"({
    "name": "bad", "basis": ["e","h","f"],
    "brackets": [
      {"a": 1, "b": 0, "out": [{"c": 0, "coeff": "2"}]},
      {"a": 1, "b": 2, "out": [{"c": 2, "coeff": "-2"}]},
      {"a": 0, "b": 2, "out": [{"c": 0, "coeff": "1"}]}
    ],
    "form": [["0","0","1"],["0","2","0"],["1","0","0"]],
    "cartan": [1], "npos": [0], "nneg": [2], "center": []
  })";
  try {
    load_lie_algebra(text);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("Jacobi") != std::string::npos);
    CHECK(msg.find("e") != std::string::npos);
  }
}

TEST_CASE("abelian dim-1 accepted, all identities vacuous") {
  LieAlgebraData L = wtest::load("abelian1.json");
  CHECK(L.dim == 1);
  CHECK(rho(L).values.at(0) == 0);
}

TEST_CASE("degenerate and asymmetric forms are rejected") {
  std::string degen = R"({"name":"d","basis":["x","y"],"brackets":[],
    "form":[["1","1"],["1","1"]],"cartan":[0,1],"npos":[],"nneg":[],"center":[0,1]})";
  CHECK_THROWS_AS(load_lie_algebra(degen), ValidationError);
  std::string asym = R"({"name":"d","basis":["x","y"],"brackets":[],
    "form":[["1","2"],["0","1"]],"cartan":[0,1],"npos":[],"nneg":[],"center":[0,1]})";
  CHECK_THROWS_AS(load_lie_algebra(asym), ValidationError);
  CHECK_THROWS_AS(load_lie_algebra("not json"), ParseError);
}

TEST_CASE("dual basis of sl2: e^e = f, e^f = e, e^h = h/2") {
  LieAlgebraData L = wtest::load("sl2.json");
  auto D = dual_basis(L);
  // derived oracle: invert the 3x3 form matrix and check the pairing directly
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Rat pair = 0;
      for (int c = 0; c < 3; ++c) pair += D[a][c] * L.form[c][b];
      CHECK(pair == (a == b ? 1 : 0));
    }
  CHECK(D[0][2] == 1);          // e^e = f
  CHECK(D[1][1] == Rat(1, 2));  // e^h = h/2
  CHECK(D[2][0] == 1);          // e^f = e
}

TEST_CASE("dual basis: orthonormal form gives the basis itself") {
  LieAlgebraData L = wtest::load("v2.json");
  auto D = dual_basis(L);
  CHECK(D[0][0] == 1);
  CHECK(D[0][1] == 0);
  CHECK(D[1][1] == 1);
}

TEST_CASE("rho from ad-traces") {
  CHECK(rho(wtest::load("sl2.json")).values.at(1) == 1);  // rho(h) = 1
  auto g = rho(wtest::load("gl2.json"));
  CHECK(g.values.at(0) == 0);  // rho(z) = 0
  CHECK(g.values.at(2) == 1);  // rho(h) = 1
  auto s3 = rho(wtest::load("sl3.json"));
  CHECK(s3.values.at(3) == 1);
  CHECK(s3.values.at(4) == 1);
}

TEST_CASE("rho is invariant under rescaling the positive-root basis") {
  // sl2 with e replaced by 5e (and f by f/5 to keep [e,f] = h)
  std::string text = R"({
    "name": "sl2-rescaled", "basis": ["e","h","f"],
    "brackets": [
      {"a": 1, "b": 0, "out": [{"c": 0, "coeff": "2"}]},
      {"a": 1, "b": 2, "out": [{"c": 2, "coeff": "-2"}]},
      {"a": 0, "b": 2, "out": [{"c": 1, "coeff": "1"}]}
    ],
    "form": [["0","0","1"],["0","2","0"],["1","0","0"]],
    "cartan": [1], "npos": [0], "nneg": [2], "center": []
  })";
  // the eigenvalue of ad(h) on any multiple of e is still 2
  LieAlgebraData L = load_lie_algebra(text);
  CHECK(rho(L).values.at(1) == 1);
}

TEST_CASE("NotDiagonal when a positive vector is not an eigenvector") {
  LieAlgebraData L;
  L.dim = 3;
  L.basis_names = {"x", "y", "h"};
  L.brackets.assign(3, std::vector<std::map<int, Rat>>(3));
  L.brackets[2][0] = {{0, Rat(1)}, {1, Rat(1)}};  // ad(h) x = x + y: not diagonal
  L.brackets[0][2] = {{0, Rat(-1)}, {1, Rat(-1)}};
  L.brackets[2][1] = {{1, Rat(1)}};
  L.brackets[1][2] = {{1, Rat(-1)}};
  L.cartan_indices = {2};
  L.npos_indices = {0, 1};
  CHECK_THROWS_AS(rho(L), NotDiagonal);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weilcliff/linalg.hpp"

using namespace weilcliff;

namespace {

SpVec vec(std::initializer_list<std::pair<int, int>> entries) {
  std::map<int, Rat> m;
  for (auto [c, v] : entries) m[c] = v;
  return spvec_from_map(m);
}

}  // namespace

TEST_CASE("rref reduces and tracks rank") {
  Rref r;
  CHECK(r.add(vec({{0, 1}, {1, 2}})));
  CHECK(r.add(vec({{1, 1}, {2, 1}})));
  CHECK_FALSE(r.add(vec({{0, 2}, {1, 6}, {2, 2}})));  // 2*r1 + 2*r2
  CHECK(r.rank() == 2);
  CHECK(r.contains(vec({{0, 3}, {1, 6}})));
  CHECK_FALSE(r.contains(vec({{2, 1}})));
  CHECK_FALSE(r.contains(vec({{3, 1}})));
}

TEST_CASE("rref basis is canonical under insertion order") {
  std::vector<SpVec> vs = {vec({{0, 1}, {2, 3}}), vec({{1, 2}, {2, 1}}), vec({{0, 1}, {1, 4}})};
  Rref a, b;
  for (const auto& v : vs) a.add(v);
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) b.add(*it);
  CHECK(a.rows() == b.rows());
}

TEST_CASE("column solver finds exact solutions and kernels") {
  // columns: (1,0,1), (0,1,1), (1,1,2) — third = first + second
  ColumnSolver cs(3);
  cs.add_column(vec({{0, 1}, {2, 1}}));
  cs.add_column(vec({{1, 1}, {2, 1}}));
  cs.add_column(vec({{0, 1}, {1, 1}, {2, 2}}));
  CHECK(cs.rank() == 2);
  auto k = cs.kernel();
  REQUIRE(k.size() == 1);
  // kernel vector proportional to (1,1,-1)
  CHECK(k[0][0] * Rat(-1) == k[0][2]);
  CHECK(k[0][1] * Rat(-1) == k[0][2]);

  auto sol = cs.solve(vec({{0, 2}, {1, 3}, {2, 5}}));
  REQUIRE(sol.ok);
  // verify: x0*(1,0,1) + x1*(0,1,1) + x2*(1,1,2) = (2,3,5)
  CHECK(sol.x[0] + sol.x[2] == 2);
  CHECK(sol.x[1] + sol.x[2] == 3);
  CHECK(sol.x[0] + sol.x[1] + 2 * sol.x[2] == 5);

  auto bad = cs.solve(vec({{2, 5}}));
  CHECK_FALSE(bad.ok);
}

TEST_CASE("solver is deterministic") {
  ColumnSolver a(2), b(2);
  for (auto* cs : {&a, &b}) {
    cs->add_column(vec({{0, 1}}));
    cs->add_column(vec({{0, 1}, {1, 1}}));
    cs->add_column(vec({{1, 1}}));
  }
  auto sa = a.solve(vec({{0, 1}, {1, 2}}));
  auto sb = b.solve(vec({{0, 1}, {1, 2}}));
  REQUIRE(sa.ok);
  CHECK(sa.x == sb.x);
}

TEST_CASE("span intersection") {
  // span{(1,0,0),(0,1,0)} meet span{(1,1,0),(0,0,1)} = span{(1,1,0)}
  auto meet = intersect_spans({vec({{0, 1}}), vec({{1, 1}})},
                              {vec({{0, 1}, {1, 1}}), vec({{2, 1}})});
  REQUIRE(meet.size() == 1);
  CHECK(meet[0] == vec({{0, 1}, {1, 1}}));
}

TEST_CASE("dense inverse") {
  std::vector<std::vector<Rat>> m = {{Rat(0), Rat(0), Rat(1)},
                                     {Rat(0), Rat(2), Rat(0)},
                                     {Rat(1), Rat(0), Rat(0)}};
  auto inv = dense_inverse(m);
  CHECK(inv[0][2] == 1);
  CHECK(inv[1][1] == Rat(1, 2));
  CHECK(inv[2][0] == 1);
  std::vector<std::vector<Rat>> sing = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_THROWS_AS(dense_inverse(sing), SingularForm);
}

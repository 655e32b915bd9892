#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "torocolor/hardness.hpp"
#include "torocolor/oracle.hpp"
#include "torocolor/torus.hpp"

using namespace toro;

TEST_CASE("the three base lists pin the construction") {
  BaseLists b = base_lists();
  CHECK(b.l1 == ColorSet{1, 2, 3});
  CHECK(b.l2 == ColorSet{2, 3, 4});
  CHECK(b.l3 == ColorSet{1, 3, 4});
}

TEST_CASE("each qualifying tuple picks its construction family") {
  auto family_of = [](int r, int s, int t) {
    Torus G = build_torus(r, s, t);
    auto H = hard_assignment(G);
    REQUIRE(H.has_value());
    CHECK(H->via.empty());
    CHECK(H->lists.n == G.n);
    for (int v = 0; v < G.n; ++v) CHECK(H->lists.at(v).size() == 3);
    return H->family;
  };
  CHECK(family_of(2, 6, 2) == HardFamily::SpecialT262);
  CHECK(family_of(4, 6, 1) == HardFamily::ColumnsR4);
  CHECK(family_of(2, 12, 5) == HardFamily::RowsR2);
  CHECK(family_of(3, 9, 3) == HardFamily::SpecialT393);
  CHECK(family_of(1, 21, 4) == HardFamily::CirculantT4);
  CHECK(family_of(1, 27, 7) == HardFamily::CirculantQuarter);
  CHECK(family_of(1, 33, 7) == HardFamily::CirculantMid);
}

TEST_CASE("the twelve-vertex table is reproduced verbatim") {
  Torus G = build_torus(2, 6, 2);
  auto H = hard_assignment(G);
  REQUIRE(H.has_value());
  const std::array<ColorSet, 12> want = {
      make_set({1, 2, 3}), make_set({1, 3, 4}), make_set({1, 3, 4}), make_set({2, 3, 4}),
      make_set({1, 2, 3}), make_set({2, 3, 4}), make_set({1, 2, 3}), make_set({1, 3, 4}),
      make_set({1, 3, 4}), make_set({1, 3, 4}), make_set({1, 3, 4}), make_set({2, 3, 4})};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(H->lists.at(G.flat(i, j)) == want[static_cast<size_t>(G.flat(i, j))]);
    }
}

TEST_CASE("tuples without a construction say why") {
  std::string reason;
  Torus nine = build_torus(3, 3, 0);
  CHECK_FALSE(hard_assignment(nine, &reason).has_value());
  CHECK(reason == "the nine-vertex complete tripartite grid has no table here");

  reason.clear();
  Torus blocked = build_torus(1, 21, 7);
  CHECK_FALSE(hard_assignment(blocked, &reason).has_value());
  CHECK(reason == "isomorphic to a multi-column grid; no single-column table applies");
}

TEST_CASE("non-3-chromatic grids are rejected outright") {
  CHECK_THROWS_WITH_AS(hard_assignment(build_torus(1, 9, 3)),
                       "hard_assignment: graph must be 3-chromatic", std::invalid_argument);
  CHECK_THROWS_WITH_AS(hard_assignment(build_torus(4, 6, 0)),
                       "hard_assignment: graph must be 3-chromatic", std::invalid_argument);
}

TEST_CASE("the twelve-vertex witness is confirmed uncolorable") {
  Torus G = build_torus(2, 6, 2);
  auto H = hard_assignment(G);
  REQUIRE(H.has_value());
  HardnessReport rep = verify_hardness(G, H->lists, 10000000);
  CHECK(rep.verdict == HardnessVerdict::ConfirmedUncolorable);
  CHECK(rep.nodes > 0);
  CHECK_FALSE(rep.witness.has_value());

  OracleResult res = is_L_colorable(to_adj_lists(G), H->lists.lists, 10000000);
  CHECK(res.status == OracleResult::Status::No);
}

TEST_CASE("colorable lists are exposed with a witness") {
  Torus G = build_torus(2, 6, 2);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), make_set({1, 2, 3, 4, 5}));
  HardnessReport rep = verify_hardness(G, make_assignment(G.n, ls), 10000000);
  CHECK(rep.verdict == HardnessVerdict::FoundColoring);
  REQUIRE(rep.witness.has_value());
  bool ok = true;
  for (int v = 0; v < G.n; ++v) {
    ok = ok && contains(ls[static_cast<size_t>(v)], (*rep.witness)[static_cast<size_t>(v)]);
    for (int w : G.nbrs(v)) ok = ok && (*rep.witness)[static_cast<size_t>(w)] != (*rep.witness)[static_cast<size_t>(v)];
  }
  CHECK(ok);
}

TEST_CASE("family and verdict labels print as stable names") {
  CHECK(std::string(to_string(HardFamily::SpecialT262)) == "SpecialT262");
  CHECK(std::string(to_string(HardFamily::ColumnsR4)) == "ColumnsR4");
  CHECK(std::string(to_string(HardnessVerdict::ConfirmedUncolorable)) == "ConfirmedUncolorable");
  CHECK(std::string(to_string(HardnessVerdict::FoundColoring)) == "FoundColoring");
  CHECK(std::string(to_string(HardnessVerdict::BudgetExceeded)) == "BudgetExceeded");
}

TEST_CASE("the column-family uniqueness pins the first two columns") {
  Torus G = build_torus(4, 6, 1);
  auto H = hard_assignment(G);
  REQUIRE(H.has_value());
  AdjLists adj = to_adj_lists(G);
  std::vector<int> frontier;
  for (int i = 1; i <= 2; ++i)
    for (int v : column(G, i)) frontier.push_back(v);
  int v11 = G.flat(1, 1), v12 = G.flat(1, 2);
  PartialColoring fixed(static_cast<size_t>(G.n), -1);
  fixed[static_cast<size_t>(v11)] = 1;
  fixed[static_cast<size_t>(v12)] = 2;
  std::vector<int> rest;
  for (int v : frontier)
    if (v != v11 && v != v12) rest.push_back(v);
  CHECK(count_extensions(adj, H->lists.lists, fixed, rest) == 1);
}

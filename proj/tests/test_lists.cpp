#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "torocolor/errors.hpp"
#include "torocolor/lists.hpp"
#include "torocolor/torus.hpp"

using namespace toro;

namespace {

const ColorSet kA = make_set({1, 2, 3, 4, 5});
const ColorSet kB = make_set({2, 3, 4, 5, 6});
const ColorSet kC = make_set({1, 3, 5, 7, 9});

ListAssignment uniform(const Torus& G, const ColorSet& l) {
  return make_assignment(G.n, std::vector<ColorSet>(static_cast<size_t>(G.n), l));
}

// Rows 1..split get lo, the rest hi, in every column.
ListAssignment split_rows(const Torus& G, int split, const ColorSet& lo, const ColorSet& hi) {
  std::vector<ColorSet> ls(static_cast<size_t>(G.n));
  for (int i = 1; i <= G.r; ++i)
    for (int j = 1; j <= G.s; ++j) ls[static_cast<size_t>(G.flat(i, j))] = j <= split ? lo : hi;
  return make_assignment(G.n, ls);
}

}  // namespace

TEST_CASE("set algebra keeps color sets sorted and unique") {
  ColorSet s = make_set({3, 1, 3, 2});
  CHECK(s == ColorSet{1, 2, 3});
  CHECK(contains(s, 2));
  CHECK_FALSE(contains(s, 4));
  CHECK(set_union(make_set({1, 3}), make_set({2, 3})) == ColorSet{1, 2, 3});
  CHECK(set_inter(make_set({1, 3}), make_set({2, 3})) == ColorSet{3});
  CHECK(set_minus(make_set({1, 2, 3}), make_set({2})) == ColorSet{1, 3});
  CHECK(is_subset(make_set({1, 3}), make_set({1, 2, 3})));
  insert_color(s, 0);
  erase_color(s, 3);
  CHECK(s == ColorSet{0, 1, 2});
}

TEST_CASE("assignment constructors validate sizes") {
  Torus G = build_torus(4, 6, 1);
  ListAssignment L = uniform(G, kA);
  CHECK(L.n == G.n);
  CHECK(L.at(5) == kA);
  CHECK(validate_k_assignment(L, 5));
  CHECK(validate_k_assignment(L, 4));
  CHECK_FALSE(validate_k_assignment(L, 6));
  CHECK(all_lists_identical(L));
  ListAssignment M = split_rows(G, 3, kA, kB);
  CHECK_FALSE(all_lists_identical(M));
}

TEST_CASE("random assignments are deterministic per seed") {
  ListAssignment a = random_assignment(24, 5, 10, 7);
  ListAssignment b = random_assignment(24, 5, 10, 7);
  ListAssignment c = random_assignment(24, 5, 10, 8);
  CHECK(a.lists == b.lists);
  CHECK(a.lists != c.lists);
  for (int v = 0; v < a.n; ++v) {
    CHECK(a.at(v).size() == 5);
    CHECK(a.at(v).front() >= 0);
    CHECK(a.at(v).back() < 10);
  }
}

TEST_CASE("residual pins colored vertices and prunes their neighbors") {
  Torus G = build_torus(4, 5, 0);
  ListAssignment L = uniform(G, kA);
  PartialColoring c(static_cast<size_t>(G.n), -1);
  c[static_cast<size_t>(G.flat(1, 1))] = 2;
  ListAssignment R = residual(L, G, c);
  CHECK(R.at(G.flat(1, 1)) == ColorSet{2});
  CHECK(R.at(G.flat(1, 2)) == ColorSet{1, 3, 4, 5});
  CHECK(R.at(G.flat(3, 3)) == kA);
}

TEST_CASE("proper and valid coloring predicates") {
  Torus G = build_torus(4, 6, 1);
  ListAssignment L = uniform(G, kA);
  PartialColoring c(static_cast<size_t>(G.n), -1);
  CHECK(is_proper_partial(G, c));
  c[0] = 1;
  c[static_cast<size_t>(G.up(0))] = 1;
  CHECK_FALSE(is_proper_partial(G, c));
  c[static_cast<size_t>(G.up(0))] = 2;
  CHECK(is_proper_partial(G, c));
  CHECK_FALSE(is_valid_list_coloring(G, L, c));  // still partial
}

TEST_CASE("criteria scan flags the identical-list degeneracy") {
  Torus G = build_torus(4, 6, 1);
  CriteriaReport rep = check_criteria(G, uniform(G, kA));
  CHECK(rep.all_identical);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("row-split assignments satisfy every criterion") {
  Torus G = build_torus(4, 6, 0);
  CriteriaReport rep = check_criteria(G, split_rows(G, 3, kA, kB));
  CHECK_FALSE(rep.all_identical);
  CHECK(rep.violations.empty());
  CHECK(rep.ok());
}

TEST_CASE("a single deviant list breaks only the cover criterion on both sides") {
  Torus G = build_torus(4, 4, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  ls[static_cast<size_t>(G.flat(2, 1))] = make_set({1, 2, 3, 4, 6});
  CriteriaReport rep = check_criteria(G, make_assignment(G.n, ls));
  REQUIRE(rep.violations.size() == 2);
  for (const Violation& v : rep.violations) {
    CHECK(v.tag == CriterionTag::Cover);
    REQUIRE_FALSE(v.witness.empty());
    CHECK(v.witness.front() == G.flat(2, 1));
  }
  CHECK_FALSE(rep.violations[0].right_side);
  CHECK(rep.violations[1].right_side);
}

TEST_CASE("criteria scan needs at least four columns") {
  Torus G = build_torus(3, 6, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  ls[0] = kB;
  CHECK_THROWS_WITH_AS(check_criteria(G, make_assignment(G.n, ls)),
                       "criteria scan needs at least four columns", std::invalid_argument);
}

TEST_CASE("relabeling through the flip maps the report bijectively") {
  for (auto [r, s, t] : std::vector<std::array<int, 3>>{{4, 6, 1}, {5, 7, 3}}) {
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(t);
    Torus G = build_torus(r, s, t);
    for (uint64_t seed = 0; seed < 25; ++seed) {
      CAPTURE(seed);
      ListAssignment L = random_assignment(G.n, 5, 10, seed);
      std::vector<ColorSet> fl(static_cast<size_t>(G.n));
      for (int v = 0; v < G.n; ++v) fl[static_cast<size_t>(flip_automorphism(G, v))] = L.at(v);
      CriteriaReport a = check_criteria(G, L);
      CriteriaReport b = check_criteria(G, make_assignment(G.n, fl));
      std::map<std::tuple<int, bool, int>, int> ma, mb;
      for (const Violation& v : a.violations) {
        bool side = v.tag == CriterionTag::EqualPairSupport ? v.right_side : !v.right_side;
        ++ma[{static_cast<int>(v.tag), side, v.exit_variant}];
      }
      for (const Violation& v : b.violations)
        ++mb[{static_cast<int>(v.tag), v.right_side, v.exit_variant}];
      CHECK(ma == mb);
    }
  }
}

TEST_CASE("equal-list components partition the vertices") {
  Torus G = build_torus(4, 6, 0);
  ListAssignment L = split_rows(G, 3, kA, kB);
  auto comps = list_class_components(G, L);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].list_value == kA);
  CHECK(comps[0].members.size() == 12);
  CHECK_FALSE(comps[0].isolated);
  CHECK(comps[1].list_value == kB);
  CHECK(comps[1].members.size() == 12);
  std::vector<int> all;
  for (const auto& c : comps) all.insert(all.end(), c.members.begin(), c.members.end());
  std::sort(all.begin(), all.end());
  CHECK(static_cast<int>(all.size()) == G.n);
}

TEST_CASE("an isolated vertex has no neighbor sharing its list") {
  Torus G = build_torus(4, 4, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  ls[static_cast<size_t>(G.flat(2, 1))] = kC;
  ListAssignment L = make_assignment(G.n, ls);
  CHECK(is_isolated_vertex(G, L, G.flat(2, 1)));
  CHECK_FALSE(is_isolated_vertex(G, L, G.flat(1, 1)));
  auto comps = list_class_components(G, L);
  bool singleton = false;
  for (const auto& c : comps)
    if (c.members == std::vector<int>{G.flat(2, 1)}) singleton = c.isolated;
  CHECK(singleton);
}

TEST_CASE("a clean vertical pair matches the first rightward shape") {
  Torus G = build_torus(4, 6, 0);
  ListAssignment L = split_rows(G, 3, kA, kB);
  PairConfiguration pc = classify_pair(G, L, G.flat(2, 4));
  CHECK(pc.tag == PairTag::I);
  CHECK(pc.anchor == G.flat(2, 4));
  CHECK(pc.witness.size() == 12);
  for (auto [v, id] : pc.witness) {
    CHECK(id >= 1);
    CHECK(id <= 4);
    CHECK(v >= 0);
    CHECK(v < G.n);
  }
}

TEST_CASE("pair classification refuses inputs outside its shapes") {
  Torus G = build_torus(4, 6, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  for (int i = 1; i <= 4; ++i) ls[static_cast<size_t>(G.flat(i, 4))] = kB;
  ListAssignment L = make_assignment(G.n, ls);
  CHECK_THROWS_WITH_AS(classify_pair(G, L, G.flat(2, 4)),
                       "vertical pair matches no configuration", ConsistencyError);
  CHECK_THROWS_AS(classify_pair(G, split_rows(G, 3, kA, kA), G.flat(2, 4)),
                  std::invalid_argument);  // equal lists
}

TEST_CASE("an isolated triple with drifting bands matches a center shape") {
  Torus G = build_torus(6, 8, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  int center = G.flat(3, 4);
  int top = G.up(center), bot = G.down(center);
  auto lay = [&](int hi, int lo, bool step, const ColorSet& want) {
    auto row = [&](int v) {
      if (step) return std::array<int, 3>{v, G.right1(v), G.right0(G.right1(v))};
      return std::array<int, 3>{v, G.right0(v), G.right0(G.right0(v))};
    };
    for (int v : row(hi)) ls[static_cast<size_t>(v)] = want;
    for (int v : row(lo)) ls[static_cast<size_t>(v)] = want;
  };
  lay(G.up(top), top, true, kA);
  lay(bot, G.down(bot), false, kB);
  ls[static_cast<size_t>(center)] = kC;
  ListAssignment L = make_assignment(G.n, ls);
  PairConfiguration pc = classify_iso_triple(G, L, center);
  CHECK(pc.tag == PairTag::VIII);
  CHECK(pc.anchor == center);
  CHECK(pc.witness.size() == 13);
}

TEST_CASE("triple classification validates its preconditions") {
  Torus G = build_torus(4, 6, 0);
  std::vector<ColorSet> ls(static_cast<size_t>(G.n), kA);
  int center = G.flat(2, 4);
  ls[static_cast<size_t>(center)] = kB;
  ls[static_cast<size_t>(G.up(center))] = kC;
  ListAssignment L = make_assignment(G.n, ls);
  // distinct lists and isolation hold, but no drift band surrounds the center
  CHECK_THROWS_WITH_AS(classify_iso_triple(G, L, center),
                       "isolated triple matches no configuration", ConsistencyError);
  CHECK_THROWS_WITH_AS(classify_iso_triple(G, uniform(G, kA), 0),
                       "triple lists must be mutually distinct", std::invalid_argument);
}

TEST_CASE("criterion labels print as stable names") {
  CHECK(to_string(CriterionTag::Cover) == "cover");
  CHECK(to_string(CriterionTag::PairPattern) == "pair-pattern");
  CHECK(to_string(CriterionTag::EqualPairSupport) == "equal-pair-support");
  CHECK(to_string(CriterionTag::TriangleSupport) == "triangle-support");
  CHECK(to_string(PairTag::A) == "A");
  CHECK(to_string(PairTag::I) == "I");
  CHECK(to_string(PairTag::X) == "X");
}

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "torocolor/torus.hpp"

using namespace toro;

namespace {

std::vector<int> sorted_nbrs(const Torus& G, int v) {
  std::vector<int> out(G.nbrs(v).begin(), G.nbrs(v).end());
  std::sort(out.begin(), out.end());
  return out;
}

bool adjacent(const Torus& G, int v, int w) {
  const auto& a = G.nbrs(v);
  return std::find(a.begin(), a.end(), w) != a.end();
}

}  // namespace

TEST_CASE("flat indices round-trip through coordinates") {
  Torus G = build_torus(4, 6, 1);
  CHECK(G.n == 24);
  for (int f = 0; f < G.n; ++f) {
    V p = G.at(f);
    CHECK(G.flat(p.i, p.j) == f);
    CHECK(p.i >= 1);
    CHECK(p.i <= 4);
    CHECK(p.j >= 1);
    CHECK(p.j <= 6);
  }
  CHECK(column(G, 2) == std::vector<int>{6, 7, 8, 9, 10, 11});
}

TEST_CASE("supported tuples are simple and 6-regular with inverse slots") {
  for (auto [r, s, t] : std::vector<std::array<int, 3>>{
           {4, 6, 1}, {5, 7, 3}, {1, 9, 2}, {2, 8, 2}, {4, 3, 1}}) {
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(t);
    Torus G = build_torus(r, s, t);
    REQUIRE(G.simple());
    for (int v = 0; v < G.n; ++v) {
      auto nb = sorted_nbrs(G, v);
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      CHECK(std::find(nb.begin(), nb.end(), v) == nb.end());
      for (int w : nb) CHECK(adjacent(G, w, v));
      CHECK(G.down(G.up(v)) == v);
      CHECK(G.up(G.down(v)) == v);
      CHECK(G.right0(G.left0(v)) == v);
      CHECK(G.left0(G.right0(v)) == v);
      CHECK(G.right1(G.left1(v)) == v);
      CHECK(G.left1(G.right1(v)) == v);
    }
  }
}

TEST_CASE("column wraparound shifts rows by the offset") {
  Torus G = build_torus(4, 6, 1);
  CHECK(G.left0(G.flat(1, 1)) == G.flat(4, 2));
  CHECK(G.left1(G.flat(1, 1)) == G.flat(4, 3));
  CHECK(G.right0(G.flat(4, 2)) == G.flat(1, 1));
  CHECK(G.left0(G.flat(3, 2)) == G.flat(2, 2));
  CHECK(G.left1(G.flat(3, 2)) == G.flat(2, 3));
  CHECK(G.up(G.flat(2, 6)) == G.flat(2, 1));
  CHECK(G.down(G.flat(2, 1)) == G.flat(2, 6));
}

TEST_CASE("single-column tuples are circulants over both wraps") {
  Torus G = build_torus(1, 9, 2);
  CHECK(sorted_nbrs(G, 0) == std::vector<int>{1, 2, 3, 6, 7, 8});
  CHECK(G.up(0) == 1);
  CHECK(G.down(0) == 8);
  CHECK(G.left0(0) == 2);
  CHECK(G.left1(0) == 3);
  CHECK(G.right0(0) == 7);
  CHECK(G.right1(0) == 6);
}

TEST_CASE("degenerate tuples are flagged rather than silently built") {
  Torus loops = build_torus(1, 3, 0);
  CHECK(loops.has_loops);
  CHECK_FALSE(loops.simple());
  Torus multi = build_torus(2, 4, 0);
  CHECK(multi.has_multi);
  CHECK_FALSE(multi.has_loops);
  CHECK_FALSE(multi.simple());
  CHECK(build_torus(4, 6, 1).simple());
}

TEST_CASE("flip is an involutive automorphism swapping the side pairs") {
  for (auto [r, s, t] : std::vector<std::array<int, 3>>{{4, 6, 1}, {5, 7, 3}}) {
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(t);
    Torus G = build_torus(r, s, t);
    for (int v = 0; v < G.n; ++v) {
      int w = flip_automorphism(G, v);
      CHECK(flip_automorphism(G, w) == v);
      CHECK(G.up(w) == flip_automorphism(G, G.down(v)));
      CHECK(G.down(w) == flip_automorphism(G, G.up(v)));
      CHECK(G.left0(w) == flip_automorphism(G, G.right0(v)));
      CHECK(G.right0(w) == flip_automorphism(G, G.left0(v)));
      CHECK(G.left1(w) == flip_automorphism(G, G.right1(v)));
      CHECK(G.right1(w) == flip_automorphism(G, G.left1(v)));
    }
  }
}

TEST_CASE("circuit lengths along the three normal directions") {
  CHECK(normal_circuit_lengths(build_torus(4, 6, 1)) == CircuitLengths{6, 24, 24});
  CHECK(normal_circuit_lengths(build_torus(1, 9, 2)) == CircuitLengths{9, 9, 3});
  CHECK(normal_circuit_lengths(build_torus(2, 8, 2)) == CircuitLengths{8, 8, 4});
  CHECK(normal_circuit_lengths(build_torus(4, 6, 0)) == CircuitLengths{6, 4, 12});
}

TEST_CASE("cylinder columns drop the wraparound and its degrees") {
  Cylinder C = build_cylinder(3, 5);
  CHECK(C.n == 15);
  for (int f = 0; f < C.n; ++f) {
    int col = C.at(f).i;
    size_t want = (col == 1 || col == 3) ? 4 : 6;
    CHECK(C.adj[static_cast<size_t>(f)].size() == want);
    for (int w : C.adj[static_cast<size_t>(f)]) {
      const auto& back = C.adj[static_cast<size_t>(w)];
      CHECK(std::find(back.begin(), back.end(), f) != back.end());
    }
  }
  CHECK(column(C, 2) == std::vector<int>{5, 6, 7, 8, 9});
  CHECK(C.wrap_row(0) == 5);
  CHECK(C.wrap_row(6) == 1);
}

TEST_CASE("classification separates loops, multi-edges, and the chromatic split") {
  GraphClass a = classify(build_torus(2, 4, 0));
  CHECK(a.solver_case == SolverCase::Unsupported);
  CHECK(a.has_multi_edges);
  CHECK(a.unsupported_reason == "graph has multi-edges");
  GraphClass b = classify(build_torus(1, 3, 0));
  CHECK(b.solver_case == SolverCase::Unsupported);
  CHECK(b.has_loops);
  CHECK(b.unsupported_reason == "graph has loops");

  GraphClass c = classify(build_torus(4, 6, 1));
  CHECK(c.solver_case == SolverCase::Case1);
  CHECK(c.is_three_chromatic);
  CHECK_FALSE(c.rebase.has_value());
  GraphClass d = classify(build_torus(4, 6, 0));
  CHECK(d.solver_case == SolverCase::Case1);
  CHECK_FALSE(d.is_three_chromatic);
  GraphClass e = classify(build_torus(2, 9, 2));
  CHECK(e.solver_case == SolverCase::IdenticalOnly);
  CHECK(e.is_three_chromatic);
}

TEST_CASE("the two exceptional small graphs are refused") {
  GraphClass k7 = classify(build_torus(1, 7, 2));
  CHECK(k7.solver_case == SolverCase::Unsupported);
  CHECK(k7.unsupported_reason == "complete graph on 7 vertices (needs 7 colors)");
  for (int t : {2, 3, 4}) {
    CAPTURE(t);
    GraphClass g = classify(build_torus(1, 11, t));
    CHECK(g.solver_case == SolverCase::Unsupported);
    CHECK(g.unsupported_reason == "the 11-vertex 6-chromatic triangulation");
  }
}

TEST_CASE("single-column offset-two tuples pick the sequential branch") {
  for (int s : {9, 10, 12, 13}) {
    CAPTURE(s);
    CHECK(classify(build_torus(1, s, 2)).solver_case == SolverCase::Case2);
  }
}

TEST_CASE("qualifying relabelings are recorded for the dispatcher") {
  GraphClass a = classify(build_torus(1, 9, 6));
  CHECK(a.solver_case == SolverCase::Case2);
  REQUIRE(a.rebase.has_value());
  CHECK(a.rebase->r == 1);
  CHECK(a.rebase->s == 9);
  CHECK(a.rebase->t == 2);

  GraphClass b = classify(build_torus(3, 6, 0));
  CHECK(b.solver_case == SolverCase::Case1);
  REQUIRE(b.rebase.has_value());
  CHECK(b.rebase->r == 6);
  CHECK(b.rebase->s == 3);
  CHECK(b.rebase->t == 0);

  GraphClass c = classify(build_torus(2, 10, 6));
  CHECK(c.solver_case == SolverCase::Case3);
  CHECK_FALSE(c.rebase.has_value());
}

TEST_CASE("isomorphic tuples carry edge-preserving bijections") {
  Torus G = build_torus(2, 9, 2);
  auto tuples = isomorphic_tuples(G);
  CHECK(tuples.size() == 6);
  bool found = false;
  for (const IsoTuple& q : tuples) {
    found = found || (q.r == 2 && q.s == 9 && q.t == 5);
    Torus H = build_torus(q.r, q.s, q.t);
    REQUIRE(H.n == G.n);
    REQUIRE(static_cast<int>(q.to_orig.size()) == G.n);
    std::vector<int> perm = q.to_orig;
    std::sort(perm.begin(), perm.end());
    std::vector<int> iota(static_cast<size_t>(G.n));
    std::iota(iota.begin(), iota.end(), 0);
    CHECK(perm == iota);
    for (int v = 0; v < H.n; ++v)
      for (int w : H.nbrs(v)) CHECK(adjacent(G, q.to_orig[static_cast<size_t>(v)], q.to_orig[static_cast<size_t>(w)]));
  }
  CHECK(found);
}

TEST_CASE("tuple equivalence round-trips in both directions") {
  auto has = [](const std::vector<IsoTuple>& ts, int r, int s, int t) {
    for (const IsoTuple& q : ts)
      if (q.r == r && q.s == s && q.t == t) return true;
    return false;
  };
  CHECK(has(isomorphic_tuples(2, 9, 2), 2, 9, 5));
  CHECK(has(isomorphic_tuples(2, 9, 5), 2, 9, 2));
  CHECK(has(isomorphic_tuples(3, 6, 0), 3, 6, 3));
  CHECK(has(isomorphic_tuples(3, 6, 3), 3, 6, 0));
  CHECK(isomorphic_tuples(3, 6, 0).size() == 3);
}

TEST_CASE("case labels print as stable names") {
  CHECK(std::string(to_string(SolverCase::Case1)) == "Case1");
  CHECK(std::string(to_string(SolverCase::Case3)) == "Case3");
  CHECK(std::string(to_string(SolverCase::IdenticalOnly)) == "IdenticalOnly");
  CHECK(std::string(to_string(SolverCase::Unsupported)) == "Unsupported");
}

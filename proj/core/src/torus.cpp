#include "torocolor/torus.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "torocolor/errors.hpp"

namespace toro {

Torus build_torus(int r, int s, int t) {
  if (r < 1 || s < 1) throw std::invalid_argument("build_torus: r and s must be >= 1");
  if (t < 0 || t > s - 1) throw std::invalid_argument("build_torus: t must lie in [0, s-1]");
  Torus G;
  G.r = r;
  G.s = s;
  G.t = t;
  G.n = r * s;
  G.adj.resize(G.n);
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= s; ++j) {
      int f = G.flat(i, j);
      auto& a = G.adj[f];
      a[0] = G.wrap(i, j + 1);
      a[1] = G.wrap(i, j - 1);
      // stepping left past column 1 lands in column r with the row raised by t
      a[2] = G.wrap(i - 1, j + (i == 1 ? t : 0));
      a[3] = G.wrap(i - 1, j + 1 + (i == 1 ? t : 0));
      a[4] = G.wrap(i + 1, j - (i == r ? t : 0));
      a[5] = G.wrap(i + 1, j - 1 - (i == r ? t : 0));
    }
  }
  for (int f = 0; f < G.n; ++f) {
    auto sorted = G.adj[f];
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < 6; ++k) {
      if (sorted[k] == f) G.has_loops = true;
      if (k > 0 && sorted[k] == sorted[k - 1] && sorted[k] != f) G.has_multi = true;
    }
    // a 4-fold self entry means two distinct loops at the same vertex
    if (std::count(sorted.begin(), sorted.end(), f) >= 4) G.has_multi = true;
  }
  return G;
}

Cylinder build_cylinder(int r, int s) {
  if (r < 3 || s < 3) throw std::invalid_argument("build_cylinder: r and s must be >= 3");
  Cylinder C;
  C.r = r;
  C.s = s;
  C.n = r * s;
  C.adj.resize(C.n);
  auto row = [&](long long j) { return C.wrap_row(j); };
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= s; ++j) {
      auto& a = C.adj[C.flat(i, j)];
      a.push_back(C.flat(i, row(j + 1)));
      a.push_back(C.flat(i, row(j - 1)));
      if (i > 1) {
        a.push_back(C.flat(i - 1, row(j)));
        a.push_back(C.flat(i - 1, row(j + 1)));
      }
      if (i < r) {
        a.push_back(C.flat(i + 1, row(j)));
        a.push_back(C.flat(i + 1, row(j - 1)));
      }
    }
  }
  return C;
}

std::vector<int> column(const Torus& G, int i) {
  std::vector<int> out;
  out.reserve(G.s);
  for (int j = 1; j <= G.s; ++j) out.push_back(G.flat(i, j));
  return out;
}

std::vector<int> column(const Cylinder& C, int i) {
  std::vector<int> out;
  out.reserve(C.s);
  for (int j = 1; j <= C.s; ++j) out.push_back(C.flat(i, j));
  return out;
}

int flip_automorphism(const Torus& G, int f) {
  V v = G.at(f);
  return G.flat(G.r - v.i + 1, G.s - v.j + 1);
}

CircuitLengths normal_circuit_lengths(const Torus& G) {
  int g1 = std::gcd(G.s, G.t % G.s);
  int g2 = std::gcd(G.s, (G.r + G.t) % G.s);
  return {G.s, G.n / g1, G.n / g2};
}

namespace {

// True when relabeling the vertices of `tup` through to_orig reproduces the
// adjacency of `input` exactly (as multisets, so multigraphs are covered).
bool map_matches(const Torus& input, const Torus& tup, const std::vector<int>& to_orig) {
  if (tup.n != input.n || static_cast<int>(to_orig.size()) != tup.n) return false;
  std::vector<char> seen(input.n, 0);
  for (int f = 0; f < tup.n; ++f) {
    if (to_orig[f] < 0 || to_orig[f] >= input.n || seen[to_orig[f]]) return false;
    seen[to_orig[f]] = 1;
  }
  for (int f = 0; f < tup.n; ++f) {
    std::array<int, 6> a, b;
    for (int k = 0; k < 6; ++k) a[k] = to_orig[tup.adj[f][k]];
    b = input.adj[to_orig[f]];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

// Compose: result maps new-tuple flats through `inner` (new -> base tuple
// flats) and then `outer` (base tuple flats -> original input flats).
std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (size_t k = 0; k < inner.size(); ++k) out[k] = outer[inner[k]];
  return out;
}

struct TupleKey {
  int r, s, t;
  bool operator<(const TupleKey& o) const {
    return std::tie(r, s, t) < std::tie(o.r, o.s, o.t);
  }
};

// Reversing the column order (with a one-row stagger per column) turns the
// wrap shift t into (-r-t) mod s.
IsoTuple move_reverse(const Torus& base, const std::vector<int>& base_map) {
  int r = base.r, s = base.s;
  int tt = ((-base.r - base.t) % s + s) % s;
  Torus nt = build_torus(r, s, tt);
  std::vector<int> inner(nt.n);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= s; ++j)
      inner[nt.flat(i, j)] = base.wrap(r - i + 1, j + i - 1);
  return {r, s, tt, compose(base_map, inner)};
}

// Relabel so that the circuits walked by `step` become the columns. `across`
// moves from one circuit to the next and must commute with `step`; both are
// adjacency slots of the base torus, so the relabeled graph is a torus again
// and its shift is read off from where `across` re-enters the first circuit.
IsoTuple move_rebase(const Torus& base, const std::vector<int>& base_map, int step_slot,
                     int across_slot, int circuit_count) {
  int rn = circuit_count;
  int sn = base.n / circuit_count;
  std::vector<int> inner(base.n, -1);
  std::vector<int> pos1(base.n, -1);
  auto flat_new = [&](int i, int j) { return (i - 1) * sn + (j - 1); };
  int start = 0;  // base (1,1)
  for (int i = 1; i <= rn; ++i) {
    int cur = start;
    for (int j = 1; j <= sn; ++j) {
      inner[flat_new(i, j)] = cur;
      if (i == 1) pos1[cur] = j;
      cur = base.adj[cur][step_slot];
    }
    if (cur != start) throw ConsistencyError("isomorphic_tuples: circuit length mismatch");
    start = base.adj[start][across_slot];
  }
  for (int v : inner)
    if (v < 0) throw ConsistencyError("isomorphic_tuples: circuits missed a vertex");
  int re_enter = base.adj[inner[flat_new(rn, 1)]][across_slot];
  if (pos1[re_enter] < 0) throw ConsistencyError("isomorphic_tuples: circuit closure mismatch");
  int tn = ((1 - pos1[re_enter]) % sn + sn) % sn;
  return {rn, sn, tn, compose(base_map, inner)};
}

}  // namespace

std::vector<IsoTuple> isomorphic_tuples(const Torus& G) {
  std::vector<IsoTuple> out;
  std::set<TupleKey> seen;
  std::deque<IsoTuple> work;
  std::vector<int> ident(G.n);
  for (int f = 0; f < G.n; ++f) ident[f] = f;
  work.push_back({G.r, G.s, G.t, ident});
  seen.insert({G.r, G.s, G.t});
  while (!work.empty()) {
    IsoTuple cur = work.front();
    work.pop_front();
    Torus T = build_torus(cur.r, cur.s, cur.t);
    if (!map_matches(G, T, cur.to_orig))
      throw ConsistencyError("isomorphic_tuples: relabeling failed to match adjacency");
    std::vector<IsoTuple> next;
    next.push_back(move_reverse(T, cur.to_orig));
    // circuits by straight steps (slot 4), advanced by vertical steps (slot 0)
    next.push_back(move_rebase(T, cur.to_orig, 4, 0, std::gcd(T.s, T.t % T.s)));
    // circuits by diagonal steps (slot 5), advanced by straight steps (slot 4)
    next.push_back(move_rebase(T, cur.to_orig, 5, 4, std::gcd(T.s, (T.r + T.t) % T.s)));
    out.push_back(std::move(cur));
    for (auto& nx : next) {
      if (seen.insert({nx.r, nx.s, nx.t}).second) {
        if (seen.size() > 100)
          throw ConsistencyError("isomorphic_tuples: closure failed to stabilize");
        work.push_back(std::move(nx));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IsoTuple& a, const IsoTuple& b) {
    return std::tie(a.r, a.s, a.t) < std::tie(b.r, b.s, b.t);
  });
  return out;
}

std::vector<IsoTuple> isomorphic_tuples(int r, int s, int t) {
  return isomorphic_tuples(build_torus(r, s, t));
}

GraphClass classify(const Torus& G) {
  GraphClass gc;
  gc.has_loops = G.has_loops;
  gc.has_multi_edges = G.has_multi;
  gc.is_three_chromatic = (G.s % 3 == 0) && (((G.r - G.t) % 3 + 3) % 3 == 0);
  if (!G.simple()) {
    gc.solver_case = SolverCase::Unsupported;
    gc.unsupported_reason = G.has_loops ? "graph has loops" : "graph has multi-edges";
    return gc;
  }
  if (G.n == 7) {
    gc.solver_case = SolverCase::Unsupported;
    gc.unsupported_reason = "complete graph on 7 vertices (needs 7 colors)";
    return gc;
  }
  if (G.n == 11) {
    gc.solver_case = SolverCase::Unsupported;
    gc.unsupported_reason = "the 11-vertex 6-chromatic triangulation";
    return gc;
  }
  auto tuples = isomorphic_tuples(G);
  auto pick = [&](auto&& pred) -> const IsoTuple* {
    for (const auto& tp : tuples)
      if (pred(tp)) return &tp;
    return nullptr;
  };
  auto is_case1 = [](const IsoTuple& tp) { return tp.r >= 4; };
  auto is_case2 = [](const IsoTuple& tp) { return tp.r == 1 && tp.s >= 9 && tp.s != 11 && tp.t == 2; };
  auto is_case3 = [](const IsoTuple& tp) {
    return tp.r == 2 && tp.s % 2 == 0 && tp.t % 2 == 0 && tp.t != 0 && tp.t != tp.s - 2;
  };
  auto choose = [&](SolverCase c, auto&& pred) {
    gc.solver_case = c;
    IsoTuple self{G.r, G.s, G.t, {}};
    if (!pred(self)) {
      const IsoTuple* tp = pick(pred);
      gc.rebase = *tp;
    }
  };
  if (pick(is_case1)) {
    choose(SolverCase::Case1, is_case1);
  } else if (pick(is_case2)) {
    choose(SolverCase::Case2, is_case2);
  } else if (pick(is_case3)) {
    choose(SolverCase::Case3, is_case3);
  } else {
    gc.solver_case = SolverCase::IdenticalOnly;
  }
  return gc;
}

const char* to_string(SolverCase c) {
  switch (c) {
    case SolverCase::Case1: return "Case1";
    case SolverCase::Case2: return "Case2";
    case SolverCase::Case3: return "Case3";
    case SolverCase::IdenticalOnly: return "IdenticalOnly";
    case SolverCase::Unsupported: return "Unsupported";
  }
  return "?";
}

}  // namespace toro

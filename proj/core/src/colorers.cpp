#include "torocolor/colorers.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "torocolor/errors.hpp"

namespace toro {

AdjLists Orientation::underlying() const {
  AdjLists out(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int w : succ[static_cast<size_t>(v)]) {
      out[static_cast<size_t>(v)].push_back(w);
      out[static_cast<size_t>(w)].push_back(v);
    }
  for (auto& row : out) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

namespace {

// Strongly connected components of the subdigraph induced on `verts`,
// via two depth-first passes. Components come back in reverse topological
// order of the condensation (sources of the reversed graph first).
std::vector<std::vector<int>> strong_components(const Orientation& D,
                                                const std::vector<int>& verts) {
  int k = static_cast<int>(verts.size());
  std::vector<int> local(static_cast<size_t>(D.n), -1);
  for (int idx = 0; idx < k; ++idx) local[static_cast<size_t>(verts[static_cast<size_t>(idx)])] = idx;
  AdjLists fwd(static_cast<size_t>(k)), rev(static_cast<size_t>(k));
  for (int idx = 0; idx < k; ++idx)
    for (int w : D.succ[static_cast<size_t>(verts[static_cast<size_t>(idx)])]) {
      int wl = local[static_cast<size_t>(w)];
      if (wl < 0) continue;
      fwd[static_cast<size_t>(idx)].push_back(wl);
      rev[static_cast<size_t>(wl)].push_back(idx);
    }

  std::vector<int> order;
  order.reserve(static_cast<size_t>(k));
  std::vector<char> seen(static_cast<size_t>(k), 0);
  std::vector<std::pair<int, size_t>> stack;
  for (int root = 0; root < k; ++root) {
    if (seen[static_cast<size_t>(root)]) continue;
    seen[static_cast<size_t>(root)] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      if (pos < fwd[static_cast<size_t>(v)].size()) {
        int w = fwd[static_cast<size_t>(v)][pos++];
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<std::vector<int>> comps;
  std::vector<char> taken(static_cast<size_t>(k), 0);
  for (int idx = k - 1; idx >= 0; --idx) {
    int root = order[static_cast<size_t>(idx)];
    if (taken[static_cast<size_t>(root)]) continue;
    std::vector<int> comp;
    std::vector<int> dfs{root};
    taken[static_cast<size_t>(root)] = 1;
    while (!dfs.empty()) {
      int v = dfs.back();
      dfs.pop_back();
      comp.push_back(verts[static_cast<size_t>(v)]);
      for (int w : rev[static_cast<size_t>(v)])
        if (!taken[static_cast<size_t>(w)]) {
          taken[static_cast<size_t>(w)] = 1;
          dfs.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// Kernel of one strongly connected block: the even walk-parity class seen
// from its smallest vertex. A parity clash certifies an odd directed cycle.
std::vector<int> block_kernel(const Orientation& D, const std::vector<int>& comp) {
  if (comp.size() == 1) {
    for (int w : D.succ[static_cast<size_t>(comp.front())])
      if (w == comp.front())
        throw std::invalid_argument("orientation contains an odd directed cycle");
    return comp;
  }
  std::vector<char> inside(static_cast<size_t>(D.n), 0);
  for (int v : comp) inside[static_cast<size_t>(v)] = 1;
  std::vector<int> par(static_cast<size_t>(D.n), -1);
  std::queue<int> bfs;
  par[static_cast<size_t>(comp.front())] = 0;
  bfs.push(comp.front());
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int w : D.succ[static_cast<size_t>(v)]) {
      if (!inside[static_cast<size_t>(w)] || par[static_cast<size_t>(w)] >= 0) continue;
      par[static_cast<size_t>(w)] = par[static_cast<size_t>(v)] ^ 1;
      bfs.push(w);
    }
  }
  for (int v : comp) {
    if (par[static_cast<size_t>(v)] < 0)
      throw ConsistencyError("kernel block not strongly connected");
    for (int w : D.succ[static_cast<size_t>(v)])
      if (inside[static_cast<size_t>(w)] &&
          par[static_cast<size_t>(w)] == par[static_cast<size_t>(v)])
        throw std::invalid_argument("orientation contains an odd directed cycle");
  }
  std::vector<int> S;
  for (int v : comp)
    if (par[static_cast<size_t>(v)] == 0) S.push_back(v);
  return S;
}

}  // namespace

std::vector<int> find_kernel(const Orientation& D) {
  std::vector<char> alive(static_cast<size_t>(D.n), 1);
  std::vector<char> in_kernel(static_cast<size_t>(D.n), 0);
  std::vector<int> kernel;
  int remaining = D.n;
  while (remaining > 0) {
    std::vector<int> verts;
    verts.reserve(static_cast<size_t>(remaining));
    for (int v = 0; v < D.n; ++v)
      if (alive[static_cast<size_t>(v)]) verts.push_back(v);
    auto comps = strong_components(D, verts);

    std::vector<int> comp_of(static_cast<size_t>(D.n), -1);
    for (size_t c = 0; c < comps.size(); ++c)
      for (int v : comps[c]) comp_of[static_cast<size_t>(v)] = static_cast<int>(c);

    int terminal = -1;
    for (size_t c = 0; c < comps.size(); ++c) {
      bool leaves = false;
      for (int v : comps[c]) {
        for (int w : D.succ[static_cast<size_t>(v)])
          if (alive[static_cast<size_t>(w)] &&
              comp_of[static_cast<size_t>(w)] != static_cast<int>(c)) {
            leaves = true;
            break;
          }
        if (leaves) break;
      }
      if (!leaves &&
          (terminal < 0 || comps[c].front() < comps[static_cast<size_t>(terminal)].front()))
        terminal = static_cast<int>(c);
    }
    if (terminal < 0) throw ConsistencyError("digraph with no terminal block");

    auto S = block_kernel(D, comps[static_cast<size_t>(terminal)]);
    for (int v : S) in_kernel[static_cast<size_t>(v)] = 1;
    kernel.insert(kernel.end(), S.begin(), S.end());

    for (int v : comps[static_cast<size_t>(terminal)]) {
      if (alive[static_cast<size_t>(v)]) {
        alive[static_cast<size_t>(v)] = 0;
        --remaining;
      }
    }
    for (int v = 0; v < D.n; ++v) {
      if (!alive[static_cast<size_t>(v)]) continue;
      for (int w : D.succ[static_cast<size_t>(v)])
        if (in_kernel[static_cast<size_t>(w)]) {
          alive[static_cast<size_t>(v)] = 0;
          --remaining;
          break;
        }
    }
  }

  std::sort(kernel.begin(), kernel.end());
  auto under = D.underlying();
  for (int v : kernel)
    for (int w : under[static_cast<size_t>(v)])
      if (in_kernel[static_cast<size_t>(w)])
        throw ConsistencyError("kernel not independent");
  for (int v = 0; v < D.n; ++v) {
    if (in_kernel[static_cast<size_t>(v)]) continue;
    bool covered = false;
    for (int w : D.succ[static_cast<size_t>(v)])
      if (in_kernel[static_cast<size_t>(w)]) {
        covered = true;
        break;
      }
    if (!covered) throw ConsistencyError("kernel misses a vertex");
  }
  return kernel;
}

std::vector<int> find_kernel_exhaustive(const Orientation& D) {
  if (D.n > 20) throw std::invalid_argument("exhaustive kernel limited to 20 vertices");
  auto under = D.underlying();
  for (uint32_t mask = 0; mask < (uint32_t{1} << D.n); ++mask) {
    bool ok = true;
    for (int v = 0; v < D.n && ok; ++v) {
      bool in = (mask >> v) & 1;
      if (in) {
        for (int w : under[static_cast<size_t>(v)])
          if ((mask >> w) & 1) {
            ok = false;
            break;
          }
      } else {
        bool covered = false;
        for (int w : D.succ[static_cast<size_t>(v)])
          if ((mask >> w) & 1) {
            covered = true;
            break;
          }
        ok = covered;
      }
    }
    if (ok) {
      std::vector<int> S;
      for (int v = 0; v < D.n; ++v)
        if ((mask >> v) & 1) S.push_back(v);
      return S;
    }
  }
  throw std::invalid_argument("no kernel: orientation has an odd directed cycle");
}

PartialColoring bbs_color(const Orientation& D, const ListAssignment& L) {
  if (L.n != D.n) throw std::invalid_argument("bbs_color: size mismatch");
  for (int v = 0; v < D.n; ++v)
    if (static_cast<int>(L.at(v).size()) < D.out_degree(v) + 1)
      throw std::invalid_argument("bbs_color: list shorter than out-degree + 1 at vertex " +
                                  std::to_string(v));
  auto under = D.underlying();
  std::vector<ColorSet> lists = L.lists;
  PartialColoring out(static_cast<size_t>(D.n), -1);
  int uncolored = D.n;
  while (uncolored > 0) {
    Color c = std::numeric_limits<Color>::max();
    for (int v = 0; v < D.n; ++v)
      if (out[static_cast<size_t>(v)] < 0 && !lists[static_cast<size_t>(v)].empty())
        c = std::min(c, lists[static_cast<size_t>(v)].front());
    if (c == std::numeric_limits<Color>::max())
      throw ConsistencyError("bbs_color: uncolored vertex with empty list");

    std::vector<int> U;
    for (int v = 0; v < D.n; ++v)
      if (out[static_cast<size_t>(v)] < 0 && contains(lists[static_cast<size_t>(v)], c))
        U.push_back(v);

    Orientation H;
    H.n = static_cast<int>(U.size());
    H.succ.resize(U.size());
    std::vector<int> local(static_cast<size_t>(D.n), -1);
    for (size_t idx = 0; idx < U.size(); ++idx) local[static_cast<size_t>(U[idx])] = static_cast<int>(idx);
    for (size_t idx = 0; idx < U.size(); ++idx)
      for (int w : D.succ[static_cast<size_t>(U[idx])])
        if (local[static_cast<size_t>(w)] >= 0)
          H.succ[idx].push_back(local[static_cast<size_t>(w)]);

    auto S_local = find_kernel(H);
    std::vector<int> S;
    S.reserve(S_local.size());
    for (int sl : S_local) S.push_back(U[static_cast<size_t>(sl)]);

    for (int v : S) {
      out[static_cast<size_t>(v)] = c;
      --uncolored;
    }
    for (int v : S)
      for (int w : under[static_cast<size_t>(v)])
        if (out[static_cast<size_t>(w)] < 0) erase_color(lists[static_cast<size_t>(w)], c);

    for (int v = 0; v < D.n; ++v) {
      if (out[static_cast<size_t>(v)] >= 0) continue;
      int live_out = 0;
      for (int w : D.succ[static_cast<size_t>(v)])
        if (out[static_cast<size_t>(w)] < 0) ++live_out;
      if (static_cast<int>(lists[static_cast<size_t>(v)].size()) < live_out + 1)
        throw ConsistencyError("bbs_color: list invariant broke at vertex " + std::to_string(v));
    }
  }
  for (int v = 0; v < D.n; ++v)
    for (int w : under[static_cast<size_t>(v)])
      if (out[static_cast<size_t>(v)] == out[static_cast<size_t>(w)])
        throw ConsistencyError("bbs_color: produced an improper coloring");
  return out;
}

namespace {

std::optional<PartialColoring> color_chain(std::vector<ColorSet> L, bool cyclic) {
  int m = static_cast<int>(L.size());
  if (m == 0) return PartialColoring{};
  if (cyclic && m < 3) throw std::invalid_argument("cycle needs at least three vertices");
  PartialColoring col(static_cast<size_t>(m), -1);
  auto lft = [&](int v) { return v == 0 ? (cyclic ? m - 1 : -1) : v - 1; };
  auto rgt = [&](int v) { return v == m - 1 ? (cyclic ? 0 : -1) : v + 1; };
  auto place = [&](int v, Color c) {
    col[static_cast<size_t>(v)] = c;
    for (int w : {lft(v), rgt(v)})
      if (w >= 0 && col[static_cast<size_t>(w)] < 0) erase_color(L[static_cast<size_t>(w)], c);
  };

  for (const auto& s : L)
    if (s.empty()) return std::nullopt;

  // Singleton lists are forced; placing them may force more.
  for (;;) {
    int v = -1;
    for (int u = 0; u < m; ++u)
      if (col[static_cast<size_t>(u)] < 0 && L[static_cast<size_t>(u)].size() == 1) {
        v = u;
        break;
      }
    if (v < 0) break;
    place(v, L[static_cast<size_t>(v)].front());
    for (int u = 0; u < m; ++u)
      if (col[static_cast<size_t>(u)] < 0 && L[static_cast<size_t>(u)].empty())
        return std::nullopt;
  }

  bool any_colored = false, all_colored = true;
  for (int u = 0; u < m; ++u) {
    if (col[static_cast<size_t>(u)] >= 0)
      any_colored = true;
    else
      all_colored = false;
  }
  if (all_colored) return col;

  if (!any_colored && cyclic) {
    // Intact cycle, every list holds at least two colors.
    int big = -1;
    for (int u = 0; u < m; ++u)
      if (L[static_cast<size_t>(u)].size() >= 3) {
        big = u;
        break;
      }
    if (big >= 0) {
      // Sweep away from the large list and close on it.
      for (int k = 1; k <= m; ++k) {
        int v = (big + k) % m;
        if (L[static_cast<size_t>(v)].empty())
          throw ConsistencyError("cycle sweep ran out of colors");
        place(v, L[static_cast<size_t>(v)].front());
      }
      return col;
    }
    bool all_same = true;
    for (int u = 1; u < m; ++u)
      if (L[static_cast<size_t>(u)] != L[0]) {
        all_same = false;
        break;
      }
    if (all_same) {
      if (m % 2 != 0) return std::nullopt;
      for (int u = 0; u < m; ++u)
        col[static_cast<size_t>(u)] = L[static_cast<size_t>(u)][static_cast<size_t>(u % 2)];
      return col;
    }
    // Two adjacent distinct 2-lists: start with a color the neighbor lacks,
    // then walk the other way around.
    int p = 0;
    while (L[static_cast<size_t>(p)] == L[static_cast<size_t>((p + 1) % m)]) ++p;
    ColorSet diff = set_minus(L[static_cast<size_t>(p)], L[static_cast<size_t>((p + 1) % m)]);
    place(p, diff.front());
    for (int k = 1; k < m; ++k) {
      int v = ((p - k) % m + m) % m;
      if (L[static_cast<size_t>(v)].empty())
        throw ConsistencyError("cycle walk ran out of colors");
      place(v, L[static_cast<size_t>(v)].front());
    }
    return col;
  }

  // Runs of uncolored vertices, each bounded by colored vertices or path
  // ends; color every run from its head rightward.
  for (int v = 0; v < m; ++v) {
    int l = lft(v);
    if (col[static_cast<size_t>(v)] >= 0 || (l >= 0 && col[static_cast<size_t>(l)] < 0))
      continue;
    for (int u = v; u >= 0 && col[static_cast<size_t>(u)] < 0; u = rgt(u)) {
      if (L[static_cast<size_t>(u)].empty()) return std::nullopt;
      place(u, L[static_cast<size_t>(u)].front());
    }
  }
  for (int v = 0; v < m; ++v)
    if (col[static_cast<size_t>(v)] < 0)
      throw ConsistencyError("chain coloring left a vertex uncolored");
  return col;
}

}  // namespace

std::optional<PartialColoring> color_cycle(const std::vector<ColorSet>& lists) {
  return color_chain(lists, true);
}

std::optional<PartialColoring> color_path(const std::vector<ColorSet>& lists) {
  return color_chain(lists, false);
}

namespace {

int cylinder_profile_size(const Cylinder& C, int i, int j, int j_hi) {
  if (i == 1 && (j == C.wrap_row(j_hi) || j == C.wrap_row(j_hi - 1))) return 4;
  if (i == 1 || i == C.r) return 3;
  return 5;
}

}  // namespace

ListAssignment fit_cylinder_lists(const Cylinder& C, const ListAssignment& L,
                                  int j_hi) {
  if (L.n != C.n) throw std::invalid_argument("assignment does not fit cylinder");
  ListAssignment out;
  out.n = L.n;
  out.lists.resize(static_cast<size_t>(L.n));
  for (int i = 1; i <= C.r; ++i)
    for (int j = 1; j <= C.s; ++j) {
      int v = C.flat(i, j);
      int want = cylinder_profile_size(C, i, j, j_hi);
      const ColorSet& have = L.at(v);
      if (static_cast<int>(have.size()) < want)
        throw std::invalid_argument("cylinder list below profile size");
      out.lists[static_cast<size_t>(v)].assign(have.begin(), have.begin() + want);
    }
  return out;
}

PartialColoring color_cylinder(const Cylinder& C, const ListAssignment& L,
                               int j_hi) {
  if (C.r < 3 || C.s < 3) throw std::invalid_argument("cylinder too small");
  if (L.n != C.n) throw std::invalid_argument("assignment does not fit cylinder");
  for (int i = 1; i <= C.r; ++i)
    for (int j = 1; j <= C.s; ++j)
      if (static_cast<int>(L.at(C.flat(i, j)).size()) !=
          cylinder_profile_size(C, i, j, j_hi))
        throw std::invalid_argument("cylinder lists do not match the profile");

  std::vector<ColorSet> cur = L.lists;
  PartialColoring col(static_cast<size_t>(C.n), -1);
  auto place = [&](int v, Color c) {
    col[static_cast<size_t>(v)] = c;
    for (int w : C.adj[static_cast<size_t>(v)])
      if (col[static_cast<size_t>(w)] < 0) erase_color(cur[static_cast<size_t>(w)], c);
  };
  // Rows renamed so that the wide pair sits at rows s, s-1 of column 1.
  auto V = [&](int i, int jp) { return C.flat(i, C.wrap_row(jp + j_hi)); };

  auto color_column = [&](int i) {
    std::vector<ColorSet> cl(static_cast<size_t>(C.s));
    for (int j = 1; j <= C.s; ++j) cl[static_cast<size_t>(j - 1)] = cur[static_cast<size_t>(C.flat(i, j))];
    auto res = color_cycle(cl);
    if (!res) throw ConsistencyError("cylinder column refused to color");
    for (int j = 1; j <= C.s; ++j) place(C.flat(i, j), (*res)[static_cast<size_t>(j - 1)]);
  };

  for (int i = C.r; i >= 4; --i) color_column(i);

  // Pick for (2, s) a color its wide neighbor (1, s) cannot lose.
  int v2s = V(2, C.s);
  ColorSet free2 = set_minus(cur[static_cast<size_t>(v2s)], cur[static_cast<size_t>(V(1, C.s))]);
  if (free2.empty()) throw ConsistencyError("no spare color beside the wide pair");
  place(v2s, free2.front());

  color_column(3);

  std::vector<int> order;
  for (int j = 1; j <= C.s - 2; ++j) {
    order.push_back(V(1, j));
    order.push_back(V(2, j));
  }
  order.push_back(V(2, C.s - 1));
  order.push_back(V(1, C.s - 1));
  order.push_back(V(1, C.s));
  for (int v : order) {
    if (cur[static_cast<size_t>(v)].empty())
      throw ConsistencyError("zigzag ran out of colors");
    place(v, cur[static_cast<size_t>(v)].front());
  }

  for (int v = 0; v < C.n; ++v) {
    if (col[static_cast<size_t>(v)] < 0)
      throw ConsistencyError("cylinder coloring left a vertex uncolored");
    if (!contains(L.at(v), col[static_cast<size_t>(v)]))
      throw ConsistencyError("cylinder coloring left its lists");
    for (int w : C.adj[static_cast<size_t>(v)])
      if (col[static_cast<size_t>(w)] == col[static_cast<size_t>(v)])
        throw ConsistencyError("cylinder coloring is improper");
  }
  return col;
}

std::pair<Color, Color> reduce_k4_minus(const ColorSet& La, const ColorSet& Lb,
                                        const ColorSet& Lx, const ColorSet& Ly) {
  if (La.size() + Lb.size() != Lx.size() + Ly.size())
    throw std::invalid_argument("reduce_k4_minus: list sizes must balance");
  if (Lx.empty() || Ly.empty())
    throw std::invalid_argument("reduce_k4_minus: empty pair list");

  ColorSet common = set_inter(Lx, Ly);
  if (!common.empty()) return {common.front(), common.front()};

  ColorSet ab = set_union(La, Lb);
  ColorSet ex = set_minus(Lx, ab);
  if (!ex.empty()) return {ex.front(), Ly.front()};
  ColorSet ey = set_minus(Ly, ab);
  if (!ey.empty()) return {Lx.front(), ey.front()};

  // Both pair lists live inside La ∪ Lb and are disjoint, so the size balance
  // forces La, Lb disjoint with Lx ∪ Ly = La ∪ Lb; some pair splits across.
  for (Color cx : Lx)
    for (Color cy : Ly)
      if (contains(La, cx) != contains(La, cy)) return {cx, cy};
  throw ConsistencyError("reduce_k4_minus: no splitting pair");
}

namespace {

void validate_regular(const Bipartite& B, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  if (B.left != B.right)
    throw std::invalid_argument("regular bipartite graph needs equal sides");
  if (static_cast<int>(B.adj.size()) != B.left)
    throw std::invalid_argument("adjacency size mismatch");
  std::vector<int> rdeg(static_cast<size_t>(B.right), 0);
  for (int a = 0; a < B.left; ++a) {
    const auto& row = B.adj[static_cast<size_t>(a)];
    if (static_cast<int>(row.size()) != degree)
      throw std::invalid_argument("left vertex degree mismatch");
    std::vector<int> sorted(row);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("parallel edges not supported");
    for (int b : row) {
      if (b < 0 || b >= B.right) throw std::invalid_argument("edge endpoint out of range");
      ++rdeg[static_cast<size_t>(b)];
    }
  }
  for (int b = 0; b < B.right; ++b)
    if (rdeg[static_cast<size_t>(b)] != degree)
      throw std::invalid_argument("right vertex degree mismatch");
}

}  // namespace

Matching perfect_matching_regular_bipartite(const Bipartite& B, int degree) {
  validate_regular(B, degree);
  const int INF = std::numeric_limits<int>::max();
  std::vector<int> mate_l(static_cast<size_t>(B.left), -1);
  std::vector<int> mate_r(static_cast<size_t>(B.right), -1);
  std::vector<int> dist(static_cast<size_t>(B.left), 0);

  auto bfs = [&]() {
    std::queue<int> q;
    bool reachable = false;
    for (int a = 0; a < B.left; ++a) {
      if (mate_l[static_cast<size_t>(a)] < 0) {
        dist[static_cast<size_t>(a)] = 0;
        q.push(a);
      } else {
        dist[static_cast<size_t>(a)] = INF;
      }
    }
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b : B.adj[static_cast<size_t>(a)]) {
        int a2 = mate_r[static_cast<size_t>(b)];
        if (a2 < 0) {
          reachable = true;
        } else if (dist[static_cast<size_t>(a2)] == INF) {
          dist[static_cast<size_t>(a2)] = dist[static_cast<size_t>(a)] + 1;
          q.push(a2);
        }
      }
    }
    return reachable;
  };

  std::function<bool(int)> dfs = [&](int a) {
    for (int b : B.adj[static_cast<size_t>(a)]) {
      int a2 = mate_r[static_cast<size_t>(b)];
      if (a2 < 0 || (dist[static_cast<size_t>(a2)] == dist[static_cast<size_t>(a)] + 1 && dfs(a2))) {
        mate_l[static_cast<size_t>(a)] = b;
        mate_r[static_cast<size_t>(b)] = a;
        return true;
      }
    }
    dist[static_cast<size_t>(a)] = INF;
    return false;
  };

  int matched = 0;
  while (bfs()) {
    for (int a = 0; a < B.left; ++a)
      if (mate_l[static_cast<size_t>(a)] < 0 && dfs(a)) ++matched;
  }
  if (matched != B.left)
    throw ConsistencyError("regular bipartite graph without a perfect matching");

  Matching M;
  M.edges.reserve(static_cast<size_t>(B.left));
  for (int a = 0; a < B.left; ++a) M.edges.emplace_back(a, mate_l[static_cast<size_t>(a)]);
  return M;
}

PartialColoring color_bipartite_3regular(const Bipartite& B,
                                         const ListAssignment& L) {
  validate_regular(B, 3);
  if (L.n != B.left + B.right)
    throw std::invalid_argument("assignment does not fit graph");
  for (int a = 0; a < B.left; ++a)
    if (L.at(a).size() < 3)
      throw std::invalid_argument("left list shorter than 3 at vertex " + std::to_string(a));
  for (int b = 0; b < B.right; ++b)
    if (L.at(B.left + b).size() < 2)
      throw std::invalid_argument("right list shorter than 2 at vertex " +
                                  std::to_string(B.left + b));

  Matching M = perfect_matching_regular_bipartite(B, 3);
  std::vector<int> mate(static_cast<size_t>(B.left));
  for (auto [a, b] : M.edges) mate[static_cast<size_t>(a)] = b;

  // Leftover edges form a 2-regular bipartite graph: disjoint even cycles.
  std::vector<std::array<int, 2>> rest_l(static_cast<size_t>(B.left));
  std::vector<std::array<int, 2>> rest_r(static_cast<size_t>(B.right), {-1, -1});
  for (int a = 0; a < B.left; ++a) {
    int k = 0;
    for (int b : B.adj[static_cast<size_t>(a)]) {
      if (b == mate[static_cast<size_t>(a)]) continue;
      rest_l[static_cast<size_t>(a)][static_cast<size_t>(k++)] = b;
      auto& slot = rest_r[static_cast<size_t>(b)];
      slot[slot[0] < 0 ? 0 : 1] = a;
    }
    if (k != 2) throw ConsistencyError("leftover graph not 2-regular");
  }

  Orientation D;
  D.n = B.left + B.right;
  D.succ.resize(static_cast<size_t>(D.n));
  std::vector<std::array<char, 2>> used_l(static_cast<size_t>(B.left), {0, 0});
  for (int a0 = 0; a0 < B.left; ++a0) {
    while (!used_l[static_cast<size_t>(a0)][0] || !used_l[static_cast<size_t>(a0)][1]) {
      // Walk one leftover cycle, directing edges the way we travel.
      int a = a0;
      int slot = used_l[static_cast<size_t>(a)][0] ? 1 : 0;
      for (;;) {
        used_l[static_cast<size_t>(a)][static_cast<size_t>(slot)] = 1;
        int b = rest_l[static_cast<size_t>(a)][static_cast<size_t>(slot)];
        D.succ[static_cast<size_t>(a)].push_back(B.left + b);
        int an = rest_r[static_cast<size_t>(b)][0] == a ? rest_r[static_cast<size_t>(b)][1]
                                                        : rest_r[static_cast<size_t>(b)][0];
        D.succ[static_cast<size_t>(B.left + b)].push_back(an);
        int sn = rest_l[static_cast<size_t>(an)][0] == b ? 0 : 1;
        used_l[static_cast<size_t>(an)][static_cast<size_t>(sn)] = 1;
        a = an;
        slot = sn == 0 ? 1 : 0;
        if (a == a0) break;
      }
    }
  }
  for (int a = 0; a < B.left; ++a)
    D.succ[static_cast<size_t>(a)].push_back(B.left + mate[static_cast<size_t>(a)]);

  return bbs_color(D, L);
}

}  // namespace toro

#include "torocolor/solver.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "torocolor/colorers.hpp"
#include "torocolor/errors.hpp"

namespace toro {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Colored: return "colored";
    case SolveStatus::TrivialIdentical: return "trivial-identical";
    case SolveStatus::Unsupported: return "unsupported";
  }
  return "?";
}

const char* to_string(ExitPath p) {
  switch (p) {
    case ExitPath::None: return "none";
    case ExitPath::CoverExit: return "cover-exit";
    case ExitPath::PairExitA: return "pair-exit-a";
    case ExitPath::PairExitB: return "pair-exit-b";
    case ExitPath::PairExitC: return "pair-exit-c";
    case ExitPath::SupportExit: return "support-exit";
    case ExitPath::TriangleExit: return "triangle-exit";
    case ExitPath::TwoStep: return "two-step";
    case ExitPath::Sequential: return "sequential";
    case ExitPath::Gadget: return "gadget";
    case ExitPath::Identical: return "identical";
  }
  return "?";
}

bool verify_coloring(const Torus& G, const ListAssignment& L,
                     const PartialColoring& c) {
  if (static_cast<int>(c.size()) != G.n || L.n != G.n) return false;
  for (int v = 0; v < G.n; ++v)
    if (c[static_cast<size_t>(v)] == -1) return false;
  return is_valid_list_coloring(G, L, c);
}

TouchStats touch_counter(const SolveOutcome& out) {
  return {out.total_touches, out.max_touches_per_vertex, out.linear_time_path};
}

namespace {

int row_wrap(int s, long long j) {
  return static_cast<int>(((j - 1) % s + s) % s) + 1;
}

int col_of(const Torus& G, int f) { return G.at(f).i; }
int row_of(const Torus& G, int f) { return G.at(f).j; }

// Residual lists plus a partial coloring, with per-vertex touch counters.
// place() validates availability and propagates erasures to uncolored
// neighbors, so a violation of properness surfaces immediately.
struct Work {
  const Torus& G;
  std::vector<ColorSet> cur;
  PartialColoring col;
  std::vector<int> hits;
  long long total = 0;

  Work(const Torus& g, const ListAssignment& L)
      : G(g),
        cur(L.lists),
        col(static_cast<size_t>(g.n), -1),
        hits(static_cast<size_t>(g.n), 0) {}

  void touch(int v) {
    ++hits[static_cast<size_t>(v)];
    ++total;
  }
  bool colored(int v) const { return col[static_cast<size_t>(v)] != -1; }

  void place(int v, Color c) {
    touch(v);
    if (colored(v)) throw ConsistencyError("vertex colored twice");
    if (!contains(cur[static_cast<size_t>(v)], c))
      throw ConsistencyError("chosen color is not available at its vertex");
    col[static_cast<size_t>(v)] = c;
    for (int w : G.adj[static_cast<size_t>(v)])
      if (!colored(w)) {
        touch(w);
        erase_color(cur[static_cast<size_t>(w)], c);
      }
  }
};

struct WorkState {
  std::vector<ColorSet> cur;
  PartialColoring col;
};

WorkState save(const Work& W) { return {W.cur, W.col}; }
void restore(Work& W, const WorkState& st) {
  W.cur = st.cur;
  W.col = st.col;
}

Color pick(const ColorSet& s, const char* what) {
  if (s.empty()) throw ConsistencyError(what);
  return s.front();
}

// Completes the column-i cycle, honoring colors already placed on it.
void complete_column(Work& W, int i) {
  const Torus& G = W.G;
  std::vector<int> verts = column(G, i);
  std::vector<ColorSet> ring;
  ring.reserve(verts.size());
  for (int f : verts) {
    W.touch(f);
    ring.push_back(W.colored(f) ? ColorSet{W.col[static_cast<size_t>(f)]}
                                : W.cur[static_cast<size_t>(f)]);
  }
  auto res = color_cycle(ring);
  if (!res) throw ConsistencyError("column cycle admitted no proper coloring");
  for (size_t k = 0; k < verts.size(); ++k)
    if (!W.colored(verts[k])) W.place(verts[k], (*res)[k]);
}

// With torus column `col` fully colored and every other vertex untouched,
// colors the rest as one cylinder whose wide pair sits at rows
// (j_top, j_top - 1) of the column right of `col`. The index map and the
// residual taper are both checked before any color is committed.
void peel_rest_as_cylinder(Work& W, int col, int j_top) {
  const Torus& G = W.G;
  const int r = G.r;
  Cylinder C = build_cylinder(r - 1, G.s);
  std::vector<int> tv(static_cast<size_t>(C.n));
  std::vector<char> seen(static_cast<size_t>(G.n), 0);
  for (int f = 0; f < C.n; ++f) {
    V v = C.at(f);
    long long tc = col + v.i;
    long long row = v.j;
    if (tc > r) {
      tc -= r;
      row -= G.t;
    }
    int g = G.wrap(tc, row);
    if (col_of(G, g) == col || seen[static_cast<size_t>(g)])
      throw ConsistencyError("leftover columns do not unroll into a cylinder");
    seen[static_cast<size_t>(g)] = 1;
    tv[static_cast<size_t>(f)] = g;
  }
  for (int f = 0; f < C.n; ++f)
    for (int u : C.adj[static_cast<size_t>(f)]) {
      const auto& nb = G.adj[static_cast<size_t>(tv[static_cast<size_t>(f)])];
      if (std::find(nb.begin(), nb.end(), tv[static_cast<size_t>(u)]) == nb.end())
        throw ConsistencyError("cylinder edge has no counterpart");
    }

  int j_hi = (col == r) ? C.wrap_row(j_top + G.t) : j_top;
  std::vector<ColorSet> ls(static_cast<size_t>(C.n));
  for (int f = 0; f < C.n; ++f) {
    int g = tv[static_cast<size_t>(f)];
    W.touch(g);
    ls[static_cast<size_t>(f)] = W.cur[static_cast<size_t>(g)];
    V v = C.at(f);
    size_t need = 5;
    if (v.i == 1 || v.i == C.r) need = 3;
    if (v.i == 1 && (v.j == j_hi || v.j == C.wrap_row(j_hi - 1))) need = 4;
    if (ls[static_cast<size_t>(f)].size() < need)
      throw ConsistencyError("leftover lists fell under the cylinder taper");
  }
  ListAssignment La = make_assignment(C.n, std::move(ls));
  ListAssignment Lfit = fit_cylinder_lists(C, La, j_hi);
  PartialColoring cc = color_cylinder(C, Lfit, j_hi);
  for (int f = 0; f < C.n; ++f)
    W.place(tv[static_cast<size_t>(f)], cc[static_cast<size_t>(f)]);
}

// Three-row columns are triangles, so the usual two-vertex placements can
// collide. Instead, enumerate proper colorings of the whole exit column and
// keep the first one that leaves some adjacent pair of the next column with
// two 4-lists.
bool small_column_exit(Work& W, int exit_col, int& j_top_out) {
  const Torus& G = W.G;
  int a = G.flat(exit_col, 1);
  int b = G.flat(exit_col, 2);
  int c = G.flat(exit_col, 3);
  int rc = exit_col % G.r + 1;
  for (Color ca : W.cur[static_cast<size_t>(a)])
    for (Color cb : W.cur[static_cast<size_t>(b)])
      for (Color cc : W.cur[static_cast<size_t>(c)]) {
        if (ca == cb || cb == cc || ca == cc) continue;
        std::array<Color, 4> byrow = {0, ca, cb, cc};
        std::array<int, 4> loss = {0, 0, 0, 0};
        for (int m = 1; m <= 3; ++m) {
          int x = G.flat(rc, m);
          const ColorSet& lx = W.cur[static_cast<size_t>(x)];
          Color u1 = byrow[static_cast<size_t>(row_of(G, G.left0(x)))];
          Color u2 = byrow[static_cast<size_t>(row_of(G, G.left1(x)))];
          loss[static_cast<size_t>(m)] =
              (contains(lx, u1) ? 1 : 0) + (contains(lx, u2) ? 1 : 0);
        }
        for (int m = 1; m <= 3; ++m) {
          int below = (m == 1) ? 3 : m - 1;
          if (loss[static_cast<size_t>(m)] <= 1 &&
              loss[static_cast<size_t>(below)] <= 1) {
            W.place(a, ca);
            W.place(b, cb);
            W.place(c, cc);
            j_top_out = m;
            return true;
          }
        }
      }
  return false;
}

// Colors two chosen vertices of the column left of the pair so that the pair
// itself keeps two 4-lists, then completes that column and peels. Variants:
// 0 both diagonals, 1 shared-left then upper diagonal, 2 shared-left then
// lower diagonal.
bool do_pair_exit(Work& W, int top, int variant, ExitPath& path) {
  const Torus& G = W.G;
  int bot = G.down(top);
  int l0 = G.left0(top);
  int l1 = G.left1(top);
  int lb0 = G.left0(bot);
  int exit_col = col_of(G, l0);
  int j_top = row_of(G, top);
  if (G.s == 3) {
    if (!small_column_exit(W, exit_col, j_top)) return false;
  } else {
    int va, vb;
    ColorSet sa, sb;
    bool adjacent_pair;
    if (variant == 0) {
      va = l1;
      sa = set_minus(W.cur[static_cast<size_t>(l1)], W.cur[static_cast<size_t>(top)]);
      vb = lb0;
      sb = set_minus(W.cur[static_cast<size_t>(lb0)], W.cur[static_cast<size_t>(bot)]);
      adjacent_pair = false;
    } else if (variant == 1) {
      va = l0;
      sa = set_minus(W.cur[static_cast<size_t>(l0)], W.cur[static_cast<size_t>(bot)]);
      vb = l1;
      sb = set_minus(W.cur[static_cast<size_t>(l1)], W.cur[static_cast<size_t>(top)]);
      adjacent_pair = true;
    } else {
      va = l0;
      sa = set_minus(W.cur[static_cast<size_t>(l0)], W.cur[static_cast<size_t>(top)]);
      vb = lb0;
      sb = set_minus(W.cur[static_cast<size_t>(lb0)], W.cur[static_cast<size_t>(bot)]);
      adjacent_pair = true;
    }
    bool placed = false;
    for (Color c : sa) {
      ColorSet ds = sb;
      if (adjacent_pair) erase_color(ds, c);
      if (ds.empty()) continue;
      W.place(va, c);
      W.place(vb, ds.front());
      placed = true;
      break;
    }
    if (!placed) return false;
  }
  complete_column(W, exit_col);
  peel_rest_as_cylinder(W, exit_col, j_top);
  path = variant == 0   ? ExitPath::PairExitA
         : variant == 1 ? ExitPath::PairExitB
                        : ExitPath::PairExitC;
  return true;
}

// Both right neighbors of u carry u's list; u's vertical neighbors do not.
// Color the vertical neighbors past the right lists, finish u's column, peel.
bool do_triangle_exit(Work& W, int u, ExitPath& path) {
  const Torus& G = W.G;
  int exit_col = col_of(G, u);
  int j_top = row_of(G, u);
  if (G.s == 3) {
    if (!small_column_exit(W, exit_col, j_top)) return false;
  } else {
    int above = G.up(u);
    int below = G.down(u);
    ColorSet sa = set_minus(W.cur[static_cast<size_t>(above)],
                            W.cur[static_cast<size_t>(G.right0(u))]);
    ColorSet sb = set_minus(W.cur[static_cast<size_t>(below)],
                            W.cur[static_cast<size_t>(G.right1(u))]);
    if (sa.empty() || sb.empty()) return false;
    W.place(above, sa.front());
    W.place(below, sb.front());
  }
  complete_column(W, exit_col);
  peel_rest_as_cylinder(W, exit_col, j_top);
  path = ExitPath::TriangleExit;
  return true;
}

// Runs one violation's exit when it has a rightward-facing form. Leaves W
// dirty on failure; the caller discards it.
bool try_violation(Work& W, const Violation& vio, ExitPath& path) {
  const Torus& G = W.G;
  switch (vio.tag) {
    case CriterionTag::Cover: {
      if (!vio.right_side) return false;
      int v = vio.witness.at(0);
      ColorSet esc =
          set_minus(W.cur[static_cast<size_t>(v)],
                    set_union(W.cur[static_cast<size_t>(G.right0(v))],
                              W.cur[static_cast<size_t>(G.right1(v))]));
      if (esc.empty()) return false;
      W.place(v, esc.front());
      complete_column(W, col_of(G, v));
      peel_rest_as_cylinder(W, col_of(G, v), row_of(G, v));
      path = ExitPath::CoverExit;
      return true;
    }
    case CriterionTag::PairPattern: {
      if (vio.right_side) return false;
      return do_pair_exit(W, vio.witness.at(0), vio.exit_variant, path);
    }
    case CriterionTag::EqualPairSupport: {
      int v = vio.witness.at(0);
      int top = (vio.exit_variant == 0) ? v : G.up(v);
      int variant = (vio.exit_variant == 0) ? 1 : 2;
      if (!do_pair_exit(W, top, variant, path)) return false;
      path = ExitPath::SupportExit;
      return true;
    }
    case CriterionTag::TriangleSupport: {
      if (vio.right_side) return false;
      return do_triangle_exit(W, vio.witness.at(2), path);
    }
  }
  return false;
}

SolveOutcome finish(const Torus& G, const ListAssignment& L, Work& W,
                    ExitPath path, int extra_each, std::string msg) {
  for (int v = 0; v < G.n; ++v)
    if (!W.colored(v)) throw ConsistencyError("solver finished with holes");
  if (!verify_coloring(G, L, W.col))
    throw ConsistencyError("produced coloring failed verification");
  SolveOutcome out;
  out.status = SolveStatus::Colored;
  out.coloring = W.col;
  out.exit_path = path;
  out.total_touches = W.total + static_cast<long long>(extra_each) * G.n;
  out.max_touches_per_vertex =
      *std::max_element(W.hits.begin(), W.hits.end()) + extra_each;
  out.linear_time_path = true;
  out.message = std::move(msg);
  return out;
}

// Whether the violation's handler applies as recorded; the rest only succeed
// after the flip, so skipping them saves a wasted Work per attempt.
bool direct_form(const Violation& vio) {
  switch (vio.tag) {
    case CriterionTag::Cover: return vio.right_side;
    case CriterionTag::PairPattern: return !vio.right_side;
    case CriterionTag::EqualPairSupport: return true;
    case CriterionTag::TriangleSupport: return !vio.right_side;
  }
  return false;
}

// A fresh Work per attempt: a failed handler leaves partial state behind.
std::optional<SolveOutcome> run_exits(const Torus& G, const ListAssignment& L,
                                      const CriteriaReport& rep) {
  for (const Violation& vio : rep.violations) {
    if (!direct_form(vio)) continue;
    Work W(G, L);
    ExitPath path = ExitPath::None;
    if (try_violation(W, vio, path))
      return finish(G, L, W, path, 4, "");
  }
  // Mirror the assignment through the flip; every leftward-facing violation
  // has a rightward conjugate there.
  std::vector<ColorSet> fl(static_cast<size_t>(G.n));
  for (int v = 0; v < G.n; ++v)
    fl[static_cast<size_t>(v)] = L.at(flip_automorphism(G, v));
  ListAssignment Lf = make_assignment(G.n, std::move(fl));
  CriteriaReport repf = check_criteria(G, Lf);
  for (const Violation& vio : repf.violations) {
    if (!direct_form(vio)) continue;
    Work W(G, Lf);
    ExitPath path = ExitPath::None;
    if (!try_violation(W, vio, path)) continue;
    for (int v = 0; v < G.n; ++v)
      if (!W.colored(v)) throw ConsistencyError("mirrored exit left holes");
    PartialColoring col(static_cast<size_t>(G.n), -1);
    for (int v = 0; v < G.n; ++v)
      col[static_cast<size_t>(v)] = W.col[static_cast<size_t>(flip_automorphism(G, v))];
    if (!verify_coloring(G, L, col))
      throw ConsistencyError("mirrored exit produced an invalid coloring");
    SolveOutcome out;
    out.status = SolveStatus::Colored;
    out.coloring = std::move(col);
    out.exit_path = path;
    out.total_touches = W.total + 9LL * G.n;
    out.max_touches_per_vertex =
        *std::max_element(W.hits.begin(), W.hits.end()) + 9;
    out.linear_time_path = true;
    out.message = "applied the mirrored form of the exit";
    return out;
  }
  return std::nullopt;
}

// to[f] = image of frame vertex f under the translation taking (1, s) to
// seed. Propagating along every neighbor slot reconstructs the translation;
// the final pass proves the result is a slot-preserving bijection.
std::vector<int> translation_frame(const Torus& G, int seed) {
  const int n = G.n;
  std::vector<int> to(static_cast<size_t>(n), -1);
  int start = G.flat(1, G.s);
  to[static_cast<size_t>(start)] = seed;
  std::deque<int> bfs{start};
  while (!bfs.empty()) {
    int f = bfs.front();
    bfs.pop_front();
    int g = to[static_cast<size_t>(f)];
    for (int k = 0; k < 6; ++k) {
      int ff = G.adj[static_cast<size_t>(f)][static_cast<size_t>(k)];
      int gg = G.adj[static_cast<size_t>(g)][static_cast<size_t>(k)];
      if (to[static_cast<size_t>(ff)] == -1) {
        to[static_cast<size_t>(ff)] = gg;
        bfs.push_back(ff);
      }
    }
  }
  std::vector<char> used(static_cast<size_t>(n), 0);
  for (int f = 0; f < n; ++f) {
    int g = to[static_cast<size_t>(f)];
    if (g == -1) throw ConsistencyError("translation did not reach every vertex");
    if (used[static_cast<size_t>(g)])
      throw ConsistencyError("translation is not a bijection");
    used[static_cast<size_t>(g)] = 1;
  }
  for (int f = 0; f < n; ++f)
    for (int k = 0; k < 6; ++k)
      if (to[static_cast<size_t>(G.adj[static_cast<size_t>(f)][static_cast<size_t>(k)])] !=
          G.adj[static_cast<size_t>(to[static_cast<size_t>(f)])][static_cast<size_t>(k)])
        throw ConsistencyError("translation broke a neighbor slot");
  return to;
}

// The anchored two-column pipeline: rotate the chosen pair to rows (s, s-1)
// of column 1, color column 1 plus alternate thirds, then sweep the columns
// back around.
SolveOutcome run_two_step(const Torus& G, const ListAssignment& L) {
  const int r = G.r, s = G.s, n = G.n;

  int anchor = -1;
  for (int i = 1; i <= r && anchor == -1; ++i)
    for (int j = s; j >= 1 && anchor == -1; --j) {
      int v = G.flat(i, j);
      int b = G.down(v);
      if (L.at(v) != L.at(b) && !is_isolated_vertex(G, L, v) &&
          !is_isolated_vertex(G, L, b))
        anchor = v;
    }
  if (anchor == -1) {
    for (int i = 1; i <= r && anchor == -1; ++i)
      for (int j = s; j >= 1 && anchor == -1; --j) {
        int v = G.flat(i, j);
        if (is_isolated_vertex(G, L, v)) anchor = G.right0(v);
      }
    if (anchor != -1) {
      int b = G.down(anchor);
      if (L.at(anchor) == L.at(b) || is_isolated_vertex(G, L, anchor) ||
          is_isolated_vertex(G, L, b))
        throw ConsistencyError("pair right of a lone vertex is not anchorable");
    }
  }
  if (anchor == -1) throw ConsistencyError("no anchorable pair exists");

  std::vector<int> to = translation_frame(G, anchor);
  std::vector<ColorSet> fr(static_cast<size_t>(n));
  for (int f = 0; f < n; ++f) fr[static_cast<size_t>(f)] = L.at(to[static_cast<size_t>(f)]);
  ListAssignment Lfr = make_assignment(n, std::move(fr));

  Work W(G, Lfr);
  CaseOnePlan plan;
  plan.base_column = col_of(G, to[static_cast<size_t>(G.flat(1, 1))]);
  plan.anchor_rows = {row_of(G, anchor), row_of(G, G.down(anchor))};

  PairConfiguration cfg = classify_pair(G, Lfr, G.flat(1, s));
  plan.shifted_alternates = (cfg.tag == PairTag::IV || cfg.tag == PairTag::VI);

  std::vector<int> jrows;
  for (int k = 1; k <= s / 2; ++k)
    jrows.push_back(plan.shifted_alternates ? s - 2 * k + 1 : s - 2 * k + 2);
  for (int row : jrows)
    plan.alternates.push_back(to[static_cast<size_t>(G.flat(3, row))]);

  // The four top positions of column 1 belong to the anchor bookkeeping and
  // must never be colored before the anchor itself.
  auto is_protected = [&](int f) {
    V p = G.at(f);
    return p.i == 1 && (p.j == 1 || p.j >= s - 2);
  };
  auto place_log = [&](int f, Color c) {
    W.place(f, c);
    plan.stage_colors.emplace_back(to[static_cast<size_t>(f)], c);
  };

  // Stage 1: fix the awkward alternate pairs. A shared color costs the
  // second column nothing extra; the wrap shape gets explicit avoidance.
  for (int row : jrows) {
    int q = G.flat(3, row);
    int p = G.flat(1, row_wrap(s, row + 1));
    const ColorSet& La = Lfr.at(p);
    const ColorSet& Lb = Lfr.at(q);
    if (La == Lb) continue;
    ColorSet both = set_inter(La, Lb);
    if (!both.empty()) {
      if (is_protected(p))
        throw ConsistencyError("stage one reached a protected vertex");
      place_log(p, both.front());
      place_log(q, both.front());
      plan.tight_pairs.emplace_back(to[static_cast<size_t>(p)], to[static_cast<size_t>(q)]);
      continue;
    }
    bool wrap_shape = false;
    if (is_isolated_vertex(G, Lfr, p)) {
      try {
        wrap_shape = (classify_iso_triple(G, Lfr, p).tag == PairTag::X);
      } catch (const std::invalid_argument&) {
        wrap_shape = false;
      }
    }
    if (!wrap_shape) continue;
    if (is_protected(p))
      throw ConsistencyError("stage one reached a protected vertex");
    ColorSet ca = set_minus(La, Lfr.at(G.flat(2, row_wrap(s, row + 1))));
    ColorSet cb = set_minus(Lb, Lfr.at(G.flat(2, row)));
    place_log(p, pick(ca, "wrap-shape upper choice must exist"));
    place_log(q, pick(cb, "wrap-shape lower choice must exist"));
    plan.tight_pairs.emplace_back(to[static_cast<size_t>(p)], to[static_cast<size_t>(q)]);
  }

  // Stage 2: color the anchor pair so the vertex right of it loses only one
  // color overall.
  {
    int vs = G.flat(1, s);
    int vs1 = G.flat(1, s - 1);
    const ColorSet& Lt = Lfr.at(vs);
    const ColorSet& Lb2 = Lfr.at(vs1);
    ColorSet cs, cs1;
    switch (cfg.tag) {
      case PairTag::I:
      case PairTag::II:
      case PairTag::III:
      case PairTag::IV:
        cs = set_minus(Lt, Lb2);
        cs1 = set_minus(Lb2, Lt);
        break;
      case PairTag::V:
        cs = set_minus(set_inter(Lt, Lfr.at(G.flat(3, s - 1))), Lb2);
        cs1 = set_minus(Lb2, Lt);
        break;
      case PairTag::VI:
        cs = set_minus(Lt, Lb2);
        cs1 = set_minus(set_inter(Lb2, Lfr.at(G.flat(3, s - 2))), Lt);
        break;
      case PairTag::VII:
        cs = set_minus(Lt, Lfr.at(G.flat(2, s - 1)));
        cs1 = set_minus(Lb2, Lt);
        break;
      default:
        throw ConsistencyError("anchored pair matched no rightward shape");
    }
    place_log(vs, pick(cs, "anchor upper choice must exist"));
    place_log(vs1, pick(cs1, "anchor lower choice must exist"));
  }

  // Stage 3: close column 1, then finish the alternates from their partners.
  complete_column(W, 1);
  for (int row : jrows) {
    int q = G.flat(3, row);
    if (W.colored(q)) continue;
    int p = G.flat(1, row_wrap(s, row + 1));
    if (Lfr.at(p) == Lfr.at(q)) {
      place_log(q, W.col[static_cast<size_t>(p)]);
    } else {
      if (!set_inter(Lfr.at(p), Lfr.at(q)).empty())
        throw ConsistencyError("leftover alternate is neither identical nor disjoint");
      place_log(q, pick(W.cur[static_cast<size_t>(q)], "leftover alternate lost its list"));
    }
  }

  // First-step boundary: the second column must hold one 4-list at row s-1
  // and 3-lists elsewhere. Trim to exactly that shape.
  for (int m = 1; m <= s; ++m) {
    int f = G.flat(2, m);
    size_t need = (m == s - 1) ? 4u : 3u;
    W.touch(f);
    if (W.cur[static_cast<size_t>(f)].size() < need)
      throw ConsistencyError("second column fell under the declared shape");
    W.cur[static_cast<size_t>(f)].resize(need);
  }

  // Second step: sweep the columns from the far side back to column 2.
  for (int i = r; i >= 5; --i) {
    for (int f : column(G, i)) {
      W.touch(f);
      if (W.cur[static_cast<size_t>(f)].size() < 3)
        throw ConsistencyError("swept column fell under three");
    }
    complete_column(W, i);
  }
  {
    const bool odd = (s % 2 == 1);
    const int wide_row = plan.shifted_alternates ? s : 1;
    for (int m = 1; m <= s; ++m) {
      int f = G.flat(4, m);
      W.touch(f);
      size_t need = (odd && m == wide_row) ? 3u : 2u;
      if (W.cur[static_cast<size_t>(f)].size() < need)
        throw ConsistencyError("fourth column fell under its shape");
    }
    complete_column(W, 4);
  }
  {
    auto colored3 = [&](int m) {
      return W.colored(G.flat(3, row_wrap(s, m)));
    };
    for (int m = 1; m <= s; ++m) {
      if (colored3(m) || !colored3(m - 1)) continue;
      std::vector<int> run;
      int mm = m;
      while (!colored3(mm)) {
        run.push_back(G.flat(3, row_wrap(s, mm)));
        ++mm;
        if (run.size() > 2)
          throw ConsistencyError("leftover run stretched past two");
      }
      std::vector<ColorSet> seg;
      for (int f : run) {
        W.touch(f);
        seg.push_back(W.cur[static_cast<size_t>(f)]);
      }
      for (const ColorSet& l : seg)
        if (l.size() < (run.size() == 2 ? 2u : 1u))
          throw ConsistencyError("leftover lists fell under their shape");
      auto res = color_path(seg);
      if (!res) throw ConsistencyError("leftover path admitted no coloring");
      for (size_t k = 0; k < run.size(); ++k) W.place(run[k], (*res)[k]);
    }
  }
  {
    const bool odd = (s % 2 == 1);
    const int pinch_row = plan.shifted_alternates ? 1 : 2;
    for (int m = 1; m <= s; ++m) {
      int f = G.flat(2, m);
      W.touch(f);
      size_t need = (m == s - 1) ? 3u : 2u;
      if (odd && m == pinch_row) need -= 1;
      if (W.cur[static_cast<size_t>(f)].size() < need)
        throw ConsistencyError("second column fell under its final shape");
    }
    complete_column(W, 2);
  }

  for (int f = 0; f < n; ++f)
    if (!W.colored(f)) throw ConsistencyError("pipeline left holes");
  PartialColoring col(static_cast<size_t>(n), -1);
  for (int f = 0; f < n; ++f)
    col[static_cast<size_t>(to[static_cast<size_t>(f)])] = W.col[static_cast<size_t>(f)];
  if (!verify_coloring(G, L, col))
    throw ConsistencyError("pipeline coloring failed verification");

  SolveOutcome out;
  out.status = SolveStatus::Colored;
  out.coloring = std::move(col);
  out.exit_path = ExitPath::TwoStep;
  out.total_touches = W.total + 8LL * n;
  out.max_touches_per_vertex =
      *std::max_element(W.hits.begin(), W.hits.end()) + 8;
  out.linear_time_path = true;
  out.plan = std::move(plan);
  return out;
}

// Exhaustive completion of the last unfinished endgame vertices. Constant
// work: at most six vertices, lists of at most five colors.
bool endgame_brute(Work& W, const std::array<int, 6>& verts) {
  std::vector<int> todo;
  for (int v : verts)
    if (!W.colored(v)) todo.push_back(v);
  std::vector<Color> chosen(todo.size(), -1);
  auto adjacent = [&](int u, int v) {
    const auto& nb = W.G.adj[static_cast<size_t>(u)];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  };
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == todo.size()) return true;
    for (Color c : W.cur[static_cast<size_t>(todo[k])]) {
      bool ok = true;
      for (size_t l = 0; l < k && ok; ++l)
        if (chosen[l] == c && adjacent(todo[l], todo[k])) ok = false;
      if (!ok) continue;
      chosen[k] = c;
      if (go(k + 1)) return true;
    }
    return false;
  };
  if (!go(0)) return false;
  for (size_t k = 0; k < todo.size(); ++k) W.place(todo[k], chosen[k]);
  return true;
}

}  // namespace

SolveOutcome solve_case1(const Torus& G, const ListAssignment& L) {
  if (G.r < 4) throw std::invalid_argument("the column sweep needs at least four columns");
  if (!G.simple()) throw std::invalid_argument("only simple graphs are colorable here");
  if (L.n != G.n || !validate_k_assignment(L, 5))
    throw std::invalid_argument("a matching 5-assignment is required");
  if (all_lists_identical(L)) return solve_identical(G, L);
  CriteriaReport rep = check_criteria(G, L);
  if (rep.violations.empty()) return run_two_step(G, L);
  if (auto out = run_exits(G, L, rep)) return *out;
  SolveOutcome out = solve_identical(G, L);
  if (!out.message.empty()) out.message += "; ";
  out.message += "no structural exit applied, used backtracking";
  return out;
}

SolveOutcome solve_case2(const Torus& G, const ListAssignment& L) {
  if (G.r != 1 || G.t != 2 || G.s < 9 || G.s == 11)
    throw std::invalid_argument(
        "the sequential pass expects a single column, offset two, length at "
        "least nine and not eleven");
  if (!G.simple()) throw std::invalid_argument("only simple graphs are colorable here");
  if (L.n != G.n || !validate_k_assignment(L, 5))
    throw std::invalid_argument("a matching 5-assignment is required");
  if (all_lists_identical(L)) return solve_identical(G, L);

  const int s = G.s, n = G.n;
  int seam = -1;
  for (int m = 1; m <= s && seam == -1; ++m)
    if (L.at(G.flat(1, m)) != L.at(G.flat(1, row_wrap(s, m + 1)))) seam = m;
  if (seam == -1) throw ConsistencyError("distinct lists must change somewhere");
  std::vector<int> to = translation_frame(G, G.flat(1, seam));
  std::vector<ColorSet> fr(static_cast<size_t>(n));
  for (int f = 0; f < n; ++f) fr[static_cast<size_t>(f)] = L.at(to[static_cast<size_t>(f)]);
  ListAssignment Lfr = make_assignment(n, std::move(fr));

  Work W(G, Lfr);
  // Highest row first, avoiding the list below the seam, then greedily down
  // to row 7. Each vertex has at most three colored neighbors above it.
  W.place(G.flat(1, s),
          pick(set_minus(W.cur[static_cast<size_t>(G.flat(1, s))],
                         W.cur[static_cast<size_t>(G.flat(1, 1))]),
               "seam choice must exist"));
  for (int j = s - 1; j >= 7; --j)
    W.place(G.flat(1, j),
            pick(W.cur[static_cast<size_t>(G.flat(1, j))], "greedy residual ran dry"));

  const std::array<int, 6> ev = {G.flat(1, 1), G.flat(1, 2), G.flat(1, 3),
                                 G.flat(1, 4), G.flat(1, 5), G.flat(1, 6)};
  WorkState base = save(W);
  bool done = false;

  ColorSet inter26 = set_inter(W.cur[static_cast<size_t>(ev[1])],
                               W.cur[static_cast<size_t>(ev[5])]);
  ColorSet inter15 = set_inter(W.cur[static_cast<size_t>(ev[0])],
                               W.cur[static_cast<size_t>(ev[4])]);
  if (!inter26.empty()) {
    // Rows 2 and 6 are independent: one shared color, then row 1, then the
    // triangle 3-4-5.
    Color c = inter26.front();
    W.place(ev[1], c);
    W.place(ev[5], c);
    ColorSet meet = set_inter(W.cur[static_cast<size_t>(ev[2])],
                              W.cur[static_cast<size_t>(ev[3])]);
    ColorSet order = set_minus(W.cur[static_cast<size_t>(ev[0])], meet);
    ColorSet second = set_inter(W.cur[static_cast<size_t>(ev[0])], meet);
    order.insert(order.end(), second.begin(), second.end());
    WorkState after_pair = save(W);
    for (Color a : order) {
      W.place(ev[0], a);
      std::vector<ColorSet> tri = {W.cur[static_cast<size_t>(ev[2])],
                                   W.cur[static_cast<size_t>(ev[3])],
                                   W.cur[static_cast<size_t>(ev[4])]};
      if (auto res = color_cycle(tri)) {
        W.place(ev[2], (*res)[0]);
        W.place(ev[3], (*res)[1]);
        W.place(ev[4], (*res)[2]);
        done = true;
        break;
      }
      restore(W, after_pair);
    }
  } else if (!inter15.empty()) {
    // Rows 1 and 5 are independent. Prefer a shared color missing from row
    // 2; otherwise escape through row 2 or row 6.
    ColorSet order = set_minus(inter15, W.cur[static_cast<size_t>(ev[1])]);
    ColorSet second = set_inter(inter15, W.cur[static_cast<size_t>(ev[1])]);
    order.insert(order.end(), second.begin(), second.end());
    for (Color c : order) {
      bool in_second_row = contains(W.cur[static_cast<size_t>(ev[1])], c);
      W.place(ev[0], c);
      W.place(ev[4], c);
      if (!in_second_row) {
        if (!W.cur[static_cast<size_t>(ev[5])].empty()) {
          W.place(ev[5], W.cur[static_cast<size_t>(ev[5])].front());
          std::vector<ColorSet> tri = {W.cur[static_cast<size_t>(ev[1])],
                                       W.cur[static_cast<size_t>(ev[2])],
                                       W.cur[static_cast<size_t>(ev[3])]};
          if (auto res = color_cycle(tri)) {
            W.place(ev[1], (*res)[0]);
            W.place(ev[2], (*res)[1]);
            W.place(ev[3], (*res)[2]);
            done = true;
            break;
          }
        }
      } else {
        ColorSet e2 = set_minus(W.cur[static_cast<size_t>(ev[1])],
                                W.cur[static_cast<size_t>(ev[2])]);
        ColorSet e6 = set_minus(W.cur[static_cast<size_t>(ev[5])],
                                W.cur[static_cast<size_t>(ev[2])]);
        if (!e2.empty()) {
          W.place(ev[1], e2.front());
          std::vector<ColorSet> tri = {W.cur[static_cast<size_t>(ev[2])],
                                       W.cur[static_cast<size_t>(ev[3])],
                                       W.cur[static_cast<size_t>(ev[5])]};
          if (auto res = color_cycle(tri)) {
            W.place(ev[2], (*res)[0]);
            W.place(ev[3], (*res)[1]);
            W.place(ev[5], (*res)[2]);
            done = true;
            break;
          }
        } else if (!e6.empty()) {
          W.place(ev[5], e6.front());
          std::vector<ColorSet> tri = {W.cur[static_cast<size_t>(ev[1])],
                                       W.cur[static_cast<size_t>(ev[2])],
                                       W.cur[static_cast<size_t>(ev[3])]};
          if (auto res = color_cycle(tri)) {
            W.place(ev[1], (*res)[0]);
            W.place(ev[2], (*res)[1]);
            W.place(ev[3], (*res)[2]);
            done = true;
            break;
          }
        }
      }
      restore(W, base);
    }
  } else {
    // Both long chords are list-disjoint. Row 3 dodges row 6; row 4 takes a
    // color shared with whichever chord end row 3 spared; rows 1-2-5-6 form
    // a path.
    ColorSet gs = set_minus(W.cur[static_cast<size_t>(ev[2])],
                            W.cur[static_cast<size_t>(ev[5])]);
    for (Color g : gs) {
      if (done) break;
      WorkState st_g = save(W);
      bool hits_first = contains(W.cur[static_cast<size_t>(ev[0])], g);
      W.place(ev[2], g);
      int spared = hits_first ? ev[4] : ev[0];
      ColorSet hs = set_inter(W.cur[static_cast<size_t>(ev[3])],
                              W.cur[static_cast<size_t>(spared)]);
      if (hs.empty()) hs = W.cur[static_cast<size_t>(ev[3])];
      for (Color h : hs) {
        WorkState st_h = save(W);
        W.place(ev[3], h);
        std::vector<ColorSet> seg = {W.cur[static_cast<size_t>(ev[0])],
                                     W.cur[static_cast<size_t>(ev[1])],
                                     W.cur[static_cast<size_t>(ev[4])],
                                     W.cur[static_cast<size_t>(ev[5])]};
        if (auto res = color_path(seg)) {
          W.place(ev[0], (*res)[0]);
          W.place(ev[1], (*res)[1]);
          W.place(ev[4], (*res)[2]);
          W.place(ev[5], (*res)[3]);
          done = true;
          break;
        }
        restore(W, st_h);
      }
      if (!done) restore(W, st_g);
    }
  }

  if (!done) {
    restore(W, base);
    if (!endgame_brute(W, ev))
      throw ConsistencyError("endgame admitted no completion");
  }

  for (int f = 0; f < n; ++f)
    if (!W.colored(f)) throw ConsistencyError("sequential pass left holes");
  PartialColoring col(static_cast<size_t>(n), -1);
  for (int f = 0; f < n; ++f)
    col[static_cast<size_t>(to[static_cast<size_t>(f)])] = W.col[static_cast<size_t>(f)];
  if (!verify_coloring(G, L, col))
    throw ConsistencyError("sequential coloring failed verification");

  SolveOutcome out;
  out.status = SolveStatus::Colored;
  out.coloring = std::move(col);
  out.exit_path = ExitPath::Sequential;
  out.total_touches = W.total + 3LL * n;
  out.max_touches_per_vertex =
      *std::max_element(W.hits.begin(), W.hits.end()) + 3;
  out.linear_time_path = true;
  return out;
}

SolveOutcome solve_case3(const Torus& G, const ListAssignment& L) {
  if (G.r != 2 || G.s % 2 != 0 || G.t % 2 != 0 || G.t == 0 || G.t == G.s - 2)
    throw std::invalid_argument(
        "the diamond schedule expects two columns of even length with an even "
        "offset other than 0 and s-2");
  if (!G.simple()) throw std::invalid_argument("only simple graphs are colorable here");
  if (L.n != G.n || !validate_k_assignment(L, 5))
    throw std::invalid_argument("a matching 5-assignment is required");

  const int s = G.s, t = G.t, n = G.n;

  if (t > s / 2 - 1) {
    // Mirror rows onto the complementary offset and run there.
    const int t2 = s - t - 2;
    Torus G2 = build_torus(2, s, t2);
    auto phi = [&](int f) {
      V v = G.at(f);
      return (v.i == 1) ? G2.flat(1, row_wrap(s, -static_cast<long long>(v.j)))
                        : G2.flat(2, row_wrap(s, -static_cast<long long>(v.j) - 1));
    };
    for (int f = 0; f < n; ++f)
      for (int u : G.adj[static_cast<size_t>(f)]) {
        const auto& nb = G2.adj[static_cast<size_t>(phi(f))];
        if (std::find(nb.begin(), nb.end(), phi(u)) == nb.end())
          throw ConsistencyError("row mirror is not an isomorphism");
      }
    std::vector<ColorSet> ls(static_cast<size_t>(n));
    for (int f = 0; f < n; ++f) ls[static_cast<size_t>(phi(f))] = L.at(f);
    SolveOutcome out = solve_case3(G2, make_assignment(n, std::move(ls)));
    if (out.coloring) {
      PartialColoring col(static_cast<size_t>(n), -1);
      for (int f = 0; f < n; ++f)
        col[static_cast<size_t>(f)] = (*out.coloring)[static_cast<size_t>(phi(f))];
      out.coloring = std::move(col);
      if (!verify_coloring(G, L, *out.coloring))
        throw ConsistencyError("mirrored diamond coloring failed verification");
    }
    out.message = "ran on the mirrored offset";
    out.total_touches += 2LL * n;
    out.max_touches_per_vertex += 2;
    return out;
  }

  Work W(G, L);
  // Column-2 row m is colored by the diamond at even position m+1 when m is
  // odd, and by the one t later when m is even.
  auto diamond_of_row = [&](int m) {
    if (m % 2 == 1) return m + 1;
    return ((m - t - 2) % s + s) % s + 2;
  };
  auto colored_before = [&](long long m, int j) {
    return diamond_of_row(row_wrap(s, m)) < j;
  };
  auto pred_first = [&](int m, int j) {
    int lose = 0;
    for (long long d : {static_cast<long long>(m), static_cast<long long>(m) - 1,
                        static_cast<long long>(m) + t,
                        static_cast<long long>(m) + t + 1})
      if (colored_before(d, j)) ++lose;
    return 5 - lose;
  };
  auto pred_second = [&](int m, int j) {
    int lose = (colored_before(static_cast<long long>(m) - 1, j) ? 1 : 0) +
               (colored_before(static_cast<long long>(m) + 1, j) ? 1 : 0);
    return 5 - lose;
  };

  for (int j = 2; j <= s; j += 2) {
    int a = G.flat(1, j);
    int b = G.flat(1, j - 1);
    int x = G.flat(2, j - 1);
    int y = G.flat(2, row_wrap(s, j + t));
    int pa = pred_first(j, j);
    int pb = pred_first(j - 1, j);
    int px = pred_second(j - 1, j);
    int py = pred_second(row_wrap(s, j + t), j);
    if (pa + pb != px + py)
      throw ConsistencyError("diamond schedule sizes must balance");
    const std::array<std::pair<int, int>, 4> quads = {
        std::pair<int, int>{a, pa}, std::pair<int, int>{b, pb},
        std::pair<int, int>{x, px}, std::pair<int, int>{y, py}};
    for (const auto& [f, p] : quads) {
      W.touch(f);
      if (static_cast<int>(W.cur[static_cast<size_t>(f)].size()) < p)
        throw ConsistencyError("diamond residual fell under its scheduled size");
      W.cur[static_cast<size_t>(f)].resize(static_cast<size_t>(p));
    }
    auto [cx, cy] = reduce_k4_minus(W.cur[static_cast<size_t>(a)],
                                    W.cur[static_cast<size_t>(b)],
                                    W.cur[static_cast<size_t>(x)],
                                    W.cur[static_cast<size_t>(y)]);
    W.place(x, cx);
    W.place(y, cy);
  }

  for (int m = 1; m <= s; ++m) {
    int f = G.flat(1, m);
    W.touch(f);
    if (W.cur[static_cast<size_t>(f)].size() < 2)
      throw ConsistencyError("first column fell under two");
    W.cur[static_cast<size_t>(f)].resize(2);
  }
  complete_column(W, 1);

  return finish(G, L, W, ExitPath::Gadget, 0, "");
}

SolveOutcome solve_identical(const Torus& G, const ListAssignment& L) {
  if (L.n != G.n || !validate_k_assignment(L, 5))
    throw std::invalid_argument("a matching 5-assignment is required");
  SolveOutcome out;
  out.exit_path = ExitPath::Identical;
  out.linear_time_path = false;
  out.status = SolveStatus::Unsupported;
  const bool identical = all_lists_identical(L);
  if (!G.simple()) {
    out.message = "loops or parallel edges cannot be list-colored here";
    return out;
  }
  if (G.n == 7) {
    out.message = "seven mutually adjacent vertices need seven colors";
    return out;
  }
  if (G.n == 11) {
    out.message = "the eleven-vertex triangulation needs six colors";
    return out;
  }

  const int n = G.n;
  std::vector<int> col(static_cast<size_t>(n), -1);
  std::vector<int> hits(static_cast<size_t>(n), 0);
  long long total = 0;
  long long budget = 50'000'000;
  bool exhausted = false;
  auto options = [&](int v) {
    ColorSet seen;
    for (int u : G.adj[static_cast<size_t>(v)])
      if (col[static_cast<size_t>(u)] != -1)
        insert_color(seen, col[static_cast<size_t>(u)]);
    return set_minus(L.at(v), seen);
  };
  std::function<bool()> dfs = [&]() -> bool {
    int best = -1;
    int best_sat = -1;
    size_t best_avail = 100;
    for (int v = 0; v < n; ++v) {
      if (col[static_cast<size_t>(v)] != -1) continue;
      ColorSet seen;
      for (int u : G.adj[static_cast<size_t>(v)])
        if (col[static_cast<size_t>(u)] != -1)
          insert_color(seen, col[static_cast<size_t>(u)]);
      int sat = static_cast<int>(seen.size());
      size_t avail = set_minus(L.at(v), seen).size();
      if (sat > best_sat || (sat == best_sat && avail < best_avail)) {
        best = v;
        best_sat = sat;
        best_avail = avail;
      }
    }
    if (best == -1) return true;
    if (--budget < 0) {
      exhausted = true;
      return false;
    }
    ++hits[static_cast<size_t>(best)];
    ++total;
    for (Color c : options(best)) {
      col[static_cast<size_t>(best)] = c;
      if (dfs()) return true;
      col[static_cast<size_t>(best)] = -1;
      if (exhausted) return false;
    }
    return false;
  };
  if (dfs()) {
    out.status = identical ? SolveStatus::TrivialIdentical : SolveStatus::Colored;
    out.coloring = PartialColoring(col.begin(), col.end());
    if (!verify_coloring(G, L, *out.coloring))
      throw ConsistencyError("backtracking produced an invalid coloring");
    out.total_touches = total;
    out.max_touches_per_vertex = *std::max_element(hits.begin(), hits.end());
    if (!identical) out.message = "backtracking outside the structured cases";
  } else {
    out.message = exhausted ? "search budget exhausted before a decision"
                            : "these lists admit no proper coloring";
  }
  return out;
}

namespace {

SolveOutcome dispatch_rebased(const Torus& G, const ListAssignment& L,
                              const GraphClass& gc,
                              SolveOutcome (*fn)(const Torus&,
                                                 const ListAssignment&)) {
  if (!gc.rebase) return fn(G, L);
  const IsoTuple& rb = *gc.rebase;
  Torus G2 = build_torus(rb.r, rb.s, rb.t);
  std::vector<ColorSet> ls(static_cast<size_t>(G2.n));
  for (int f = 0; f < G2.n; ++f)
    ls[static_cast<size_t>(f)] = L.at(rb.to_orig[static_cast<size_t>(f)]);
  SolveOutcome out = fn(G2, make_assignment(G2.n, std::move(ls)));
  if (out.coloring) {
    PartialColoring col(static_cast<size_t>(G.n), -1);
    for (int f = 0; f < G2.n; ++f)
      col[static_cast<size_t>(rb.to_orig[static_cast<size_t>(f)])] =
          (*out.coloring)[static_cast<size_t>(f)];
    out.coloring = std::move(col);
  }
  if (out.plan) {
    for (int& v : out.plan->alternates) v = rb.to_orig[static_cast<size_t>(v)];
    for (auto& pq : out.plan->tight_pairs) {
      pq.first = rb.to_orig[static_cast<size_t>(pq.first)];
      pq.second = rb.to_orig[static_cast<size_t>(pq.second)];
    }
    for (auto& vc : out.plan->stage_colors)
      vc.first = rb.to_orig[static_cast<size_t>(vc.first)];
  }
  return out;
}

}  // namespace

SolveOutcome solve(const Torus& G, const ListAssignment& L) {
  if (L.n != G.n || !validate_k_assignment(L, 5))
    throw std::invalid_argument("a matching 5-assignment is required");
  GraphClass gc = classify(G);
  if (gc.solver_case == SolverCase::Unsupported) {
    SolveOutcome out;
    out.status = SolveStatus::Unsupported;
    out.message = gc.unsupported_reason;
    return out;
  }
  SolveOutcome out;
  if (all_lists_identical(L)) {
    out = solve_identical(G, L);
  } else {
    switch (gc.solver_case) {
      case SolverCase::Case1:
        out = dispatch_rebased(G, L, gc, &solve_case1);
        break;
      case SolverCase::Case2:
        out = dispatch_rebased(G, L, gc, &solve_case2);
        break;
      case SolverCase::Case3:
        out = dispatch_rebased(G, L, gc, &solve_case3);
        break;
      default:
        out = solve_identical(G, L);
        if (out.status == SolveStatus::Colored)
          out.message = "tuple sits outside the structured cases; backtracking";
        break;
    }
  }
  if (out.coloring && !verify_coloring(G, L, *out.coloring))
    throw ConsistencyError("dispatcher-level verification failed");
  return out;
}

}  // namespace toro

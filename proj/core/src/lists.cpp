#include "torocolor/lists.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "torocolor/errors.hpp"

namespace toro {

AdjLists to_adj_lists(const Torus& G) {
  AdjLists adj(static_cast<size_t>(G.n));
  for (int v = 0; v < G.n; ++v)
    adj[static_cast<size_t>(v)].assign(G.adj[static_cast<size_t>(v)].begin(),
                                       G.adj[static_cast<size_t>(v)].end());
  return adj;
}

ListAssignment make_assignment(int n, std::vector<ColorSet> lists) {
  if (static_cast<int>(lists.size()) != n)
    throw std::invalid_argument("list count does not match vertex count");
  for (auto& L : lists) normalize(L);
  return ListAssignment{n, std::move(lists)};
}

bool validate_k_assignment(const ListAssignment& L, int k) {
  for (const auto& s : L.lists)
    if (static_cast<int>(s.size()) < k) return false;
  return true;
}

bool all_lists_identical(const ListAssignment& L) {
  for (const auto& s : L.lists)
    if (s != L.lists.front()) return false;
  return true;
}

ListAssignment residual(const ListAssignment& L, const AdjLists& adj,
                        const PartialColoring& c) {
  if (L.n != static_cast<int>(adj.size()) || L.n != static_cast<int>(c.size()))
    throw std::invalid_argument("residual: size mismatch");
  if (!is_proper_partial(adj, c))
    throw std::invalid_argument("residual: colored vertices clash");
  ListAssignment out;
  out.n = L.n;
  out.lists.resize(static_cast<size_t>(L.n));
  for (int v = 0; v < L.n; ++v) {
    if (c[static_cast<size_t>(v)] >= 0) {
      out.lists[static_cast<size_t>(v)] = {c[static_cast<size_t>(v)]};
      continue;
    }
    ColorSet s = L.at(v);
    for (int w : adj[static_cast<size_t>(v)])
      if (c[static_cast<size_t>(w)] >= 0) erase_color(s, c[static_cast<size_t>(w)]);
    out.lists[static_cast<size_t>(v)] = std::move(s);
  }
  return out;
}

ListAssignment residual(const ListAssignment& L, const Torus& G,
                        const PartialColoring& c) {
  return residual(L, to_adj_lists(G), c);
}

ListAssignment residual(const ListAssignment& L, const Cylinder& C,
                        const PartialColoring& c) {
  return residual(L, C.adj, c);
}

bool is_proper_partial(const AdjLists& adj, const PartialColoring& c) {
  for (size_t v = 0; v < adj.size(); ++v) {
    if (c[v] < 0) continue;
    for (int w : adj[v])
      if (w != static_cast<int>(v) && c[static_cast<size_t>(w)] == c[v]) return false;
  }
  return true;
}

bool is_proper_partial(const Torus& G, const PartialColoring& c) {
  return is_proper_partial(to_adj_lists(G), c);
}

bool is_valid_list_coloring(const AdjLists& adj, const ListAssignment& L,
                            const PartialColoring& c) {
  if (static_cast<int>(c.size()) != L.n) return false;
  for (int v = 0; v < L.n; ++v) {
    if (c[static_cast<size_t>(v)] < 0) return false;
    if (!contains(L.at(v), c[static_cast<size_t>(v)])) return false;
  }
  return is_proper_partial(adj, c);
}

bool is_valid_list_coloring(const Torus& G, const ListAssignment& L,
                            const PartialColoring& c) {
  return is_valid_list_coloring(to_adj_lists(G), L, c);
}

uint64_t bounded_random(std::mt19937_64& rng, uint64_t m) {
  if (m == 0) throw std::invalid_argument("bounded_random: empty range");
  uint64_t reject_below = (0 - m) % m;
  for (;;) {
    uint64_t x = rng();
    if (x >= reject_below) return x % m;
  }
}

ListAssignment random_assignment(int n, int k, int universe, uint64_t seed) {
  if (k < 0 || universe < k)
    throw std::invalid_argument("random_assignment: universe smaller than list size");
  std::mt19937_64 rng(seed);
  ListAssignment out;
  out.n = n;
  out.lists.resize(static_cast<size_t>(n));
  std::vector<Color> pool(static_cast<size_t>(universe));
  for (int v = 0; v < n; ++v) {
    std::iota(pool.begin(), pool.end(), 0);
    ColorSet s;
    s.reserve(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
      uint64_t pick = static_cast<uint64_t>(t) +
                      bounded_random(rng, static_cast<uint64_t>(universe - t));
      std::swap(pool[static_cast<size_t>(t)], pool[pick]);
      s.push_back(pool[static_cast<size_t>(t)]);
    }
    normalize(s);
    out.lists[static_cast<size_t>(v)] = std::move(s);
  }
  return out;
}

std::string to_string(CriterionTag tag) {
  switch (tag) {
    case CriterionTag::Cover: return "cover";
    case CriterionTag::PairPattern: return "pair-pattern";
    case CriterionTag::EqualPairSupport: return "equal-pair-support";
    case CriterionTag::TriangleSupport: return "triangle-support";
  }
  return "?";
}

namespace {

// The three shapes a distinct-list vertical pair may form against its left
// neighbors: 0 both lists continue diagonally, 1 the upper list fills both
// left slots, 2 the lower list does. Returns -1 when none holds.
int left_pair_shape(const Torus& G, const ListAssignment& L, int top) {
  int bot = G.adj[static_cast<size_t>(top)][1];
  const ColorSet& Lt = L.at(top);
  const ColorSet& Lb = L.at(bot);
  const ColorSet& l0 = L.at(G.adj[static_cast<size_t>(top)][2]);
  const ColorSet& l1 = L.at(G.adj[static_cast<size_t>(top)][3]);
  const ColorSet& lb0 = L.at(G.adj[static_cast<size_t>(bot)][2]);
  bool t_up = Lt == l1;
  bool t_lo = Lt == l0;
  bool b_lo = Lb == lb0;
  bool b_up = Lb == l0;
  if (t_up && b_lo) return 0;
  if (t_up && t_lo && !b_lo) return 1;
  if (!t_up && b_up && b_lo) return 2;
  return -1;
}

// Which replacement opening a failed pair offers; the shapes cover the
// complement of these three conditions, so one of them must fire.
int left_pair_exit(const Torus& G, const ListAssignment& L, int top) {
  int bot = G.adj[static_cast<size_t>(top)][1];
  const ColorSet& Lt = L.at(top);
  const ColorSet& Lb = L.at(bot);
  const ColorSet& l0 = L.at(G.adj[static_cast<size_t>(top)][2]);
  const ColorSet& l1 = L.at(G.adj[static_cast<size_t>(top)][3]);
  const ColorSet& lb0 = L.at(G.adj[static_cast<size_t>(bot)][2]);
  if (Lt != l1 && Lb != lb0) return 0;
  if (Lt != l1 && Lb != l0) return 1;
  if (Lt != l0 && Lb != lb0) return 2;
  throw ConsistencyError("pair neither matches a shape nor offers an exit");
}

std::vector<int> common_neighbors(const Torus& G, int u, int v) {
  std::vector<int> out;
  for (int a : G.adj[static_cast<size_t>(u)]) {
    if (a == u || a == v) continue;
    for (int b : G.adj[static_cast<size_t>(v)]) {
      if (a == b) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CriteriaReport check_criteria(const Torus& G, const ListAssignment& L) {
  if (G.r < 4)
    throw std::invalid_argument("criteria scan needs at least four columns");
  if (L.n != G.n) throw std::invalid_argument("assignment does not fit graph");

  CriteriaReport rep;
  rep.all_identical = all_lists_identical(L);
  if (rep.all_identical) {
    rep.violations.push_back({CriterionTag::Cover, false, -1, {}});
    return rep;
  }

  // Every violation is collected, not just the first: relabeling through the
  // flip must carry the violation set bijectively, and the solver wants the
  // full menu of exits on each side.
  for (int v = 0; v < G.n; ++v) {
    const auto& a = G.adj[static_cast<size_t>(v)];
    if (!is_subset(L.at(v), set_union(L.at(a[2]), L.at(a[3]))))
      rep.violations.push_back({CriterionTag::Cover, false, -1, {v}});
    if (!is_subset(L.at(v), set_union(L.at(a[4]), L.at(a[5]))))
      rep.violations.push_back({CriterionTag::Cover, true, -1, {v}});
  }

  // The mirrored pair shapes are checked by relabeling through the flip
  // automorphism, which swaps the two column sides.
  std::vector<int> flip(static_cast<size_t>(G.n));
  for (int v = 0; v < G.n; ++v)
    flip[static_cast<size_t>(v)] = flip_automorphism(G, v);
  ListAssignment Lf;
  Lf.n = G.n;
  Lf.lists.resize(static_cast<size_t>(G.n));
  for (int v = 0; v < G.n; ++v)
    Lf.lists[static_cast<size_t>(v)] = L.at(flip[static_cast<size_t>(v)]);

  for (int top = 0; top < G.n; ++top) {
    int bot = G.adj[static_cast<size_t>(top)][1];
    if (L.at(top) == L.at(bot)) continue;
    if (left_pair_shape(G, L, top) < 0)
      rep.violations.push_back({CriterionTag::PairPattern, false,
                                left_pair_exit(G, L, top), {top, bot}});
    int ftop = flip[static_cast<size_t>(bot)];
    if (left_pair_shape(G, Lf, ftop) < 0)
      rep.violations.push_back({CriterionTag::PairPattern, true,
                                left_pair_exit(G, Lf, ftop), {top, bot}});
  }

  for (int v = 0; v < G.n; ++v) {
    for (int slot = 2; slot <= 3; ++slot) {
      int w = G.adj[static_cast<size_t>(v)][static_cast<size_t>(slot)];
      if (L.at(v) != L.at(w)) continue;
      bool supported = false;
      for (int u : common_neighbors(G, v, w))
        if (L.at(u) == L.at(v)) {
          supported = true;
          break;
        }
      if (!supported)
        rep.violations.push_back(
            {CriterionTag::EqualPairSupport, false, slot - 2, {v, w}});
    }
  }

  for (int v = 0; v < G.n; ++v) {
    int bot = G.adj[static_cast<size_t>(v)][1];
    if (L.at(v) != L.at(bot)) continue;
    for (int side = 0; side < 2; ++side) {
      int u = side == 0 ? G.adj[static_cast<size_t>(v)][2]
                        : G.adj[static_cast<size_t>(v)][5];
      if (L.at(u) != L.at(v)) continue;
      int uu = G.adj[static_cast<size_t>(u)][0];
      int ud = G.adj[static_cast<size_t>(u)][1];
      if (L.at(uu) != L.at(u) && L.at(ud) != L.at(u))
        rep.violations.push_back(
            {CriterionTag::TriangleSupport, side == 1, -1, {v, bot, u}});
    }
  }

  return rep;
}

std::vector<ComponentInfo> list_class_components(const Torus& G,
                                                 const ListAssignment& L) {
  if (L.n != G.n) throw std::invalid_argument("assignment does not fit graph");
  std::vector<ComponentInfo> out;
  std::vector<char> seen(static_cast<size_t>(G.n), 0);
  std::vector<int> stack;
  for (int v = 0; v < G.n; ++v) {
    if (seen[static_cast<size_t>(v)]) continue;
    ComponentInfo info;
    info.list_value = L.at(v);
    stack.assign(1, v);
    seen[static_cast<size_t>(v)] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      info.members.push_back(u);
      for (int w : G.adj[static_cast<size_t>(u)]) {
        if (seen[static_cast<size_t>(w)] || L.at(w) != info.list_value) continue;
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
    std::sort(info.members.begin(), info.members.end());
    info.isolated = info.members.size() == 1;
    out.push_back(std::move(info));
  }
  return out;
}

bool is_isolated_vertex(const Torus& G, const ListAssignment& L, int v) {
  for (int w : G.adj[static_cast<size_t>(v)])
    if (w != v && L.at(w) == L.at(v)) return false;
  return true;
}

std::string to_string(PairTag tag) {
  switch (tag) {
    case PairTag::A: return "A";
    case PairTag::B: return "B";
    case PairTag::C: return "C";
    case PairTag::I: return "I";
    case PairTag::II: return "II";
    case PairTag::III: return "III";
    case PairTag::IV: return "IV";
    case PairTag::V: return "V";
    case PairTag::VI: return "VI";
    case PairTag::VII: return "VII";
    case PairTag::VIII: return "VIII";
    case PairTag::IX: return "IX";
    case PairTag::X: return "X";
  }
  return "?";
}

namespace {

// How a two-row band of one list drifts over the next two columns.
enum class Drift { Straight, LateStep, EarlyStep, Diagonal };

std::array<int, 3> drift_row(const Torus& G, int v, Drift d) {
  auto r0 = [&](int u) { return G.adj[static_cast<size_t>(u)][4]; };
  auto r1 = [&](int u) { return G.adj[static_cast<size_t>(u)][5]; };
  switch (d) {
    case Drift::Straight: return {v, r0(v), r0(r0(v))};
    case Drift::LateStep: return {v, r0(v), r1(r0(v))};
    case Drift::EarlyStep: return {v, r1(v), r0(r1(v))};
    default: return {v, r1(v), r1(r1(v))};
  }
}

bool band_matches(const Torus& G, const ListAssignment& L, int hi, int lo,
                  Drift d, const ColorSet& want) {
  for (int v : drift_row(G, hi, d))
    if (L.at(v) != want) return false;
  for (int v : drift_row(G, lo, d))
    if (L.at(v) != want) return false;
  return true;
}

void push_band(const Torus& G, int hi, int lo, Drift d, int id,
               std::vector<std::pair<int, int>>& witness) {
  for (int v : drift_row(G, hi, d)) witness.emplace_back(v, id);
  for (int v : drift_row(G, lo, d)) witness.emplace_back(v, id);
}

}  // namespace

PairConfiguration classify_pair(const Torus& G, const ListAssignment& L,
                                int top) {
  int bot = G.adj[static_cast<size_t>(top)][1];
  const ColorSet& L1 = L.at(top);
  const ColorSet& L2 = L.at(bot);
  if (L1 == L2) throw std::invalid_argument("pair lists must differ");
  if (is_isolated_vertex(G, L, top) || is_isolated_vertex(G, L, bot))
    throw std::invalid_argument("pair endpoints must not be isolated");

  int a2 = G.adj[static_cast<size_t>(top)][0];
  int bm1 = G.adj[static_cast<size_t>(bot)][1];
  auto r0 = [&](int u) { return G.adj[static_cast<size_t>(u)][4]; };
  auto r1 = [&](int u) { return G.adj[static_cast<size_t>(u)][5]; };

  struct Plain {
    PairTag tag;
    Drift d;
  };
  const Plain plain[] = {{PairTag::I, Drift::Straight},
                         {PairTag::II, Drift::LateStep},
                         {PairTag::III, Drift::EarlyStep},
                         {PairTag::IV, Drift::Diagonal}};
  for (const auto& p : plain) {
    if (band_matches(G, L, a2, top, p.d, L1) &&
        band_matches(G, L, bot, bm1, p.d, L2)) {
      PairConfiguration out{p.tag, top, {}};
      push_band(G, a2, top, p.d, 1, out.witness);
      push_band(G, bot, bm1, p.d, 2, out.witness);
      return out;
    }
  }

  struct Split {
    PairTag tag;
    Drift upper;
    Drift lower;
    int iso;
  };
  const Split split[] = {
      {PairTag::V, Drift::Straight, Drift::LateStep, r0(r0(bot))},
      {PairTag::VI, Drift::EarlyStep, Drift::Diagonal, r0(r1(bot))},
      {PairTag::VII, Drift::LateStep, Drift::EarlyStep, r0(bot)}};
  for (const auto& p : split) {
    if (!band_matches(G, L, a2, top, p.upper, L1)) continue;
    if (!band_matches(G, L, bot, bm1, p.lower, L2)) continue;
    const ColorSet& L3 = L.at(p.iso);
    if (L3 == L1 || L3 == L2 || !is_isolated_vertex(G, L, p.iso)) continue;
    PairConfiguration out{p.tag, top, {}};
    push_band(G, a2, top, p.upper, 1, out.witness);
    push_band(G, bot, bm1, p.lower, 2, out.witness);
    out.witness.emplace_back(p.iso, 3);
    return out;
  }

  throw ConsistencyError("vertical pair matches no configuration");
}

PairConfiguration classify_iso_triple(const Torus& G, const ListAssignment& L,
                                      int center) {
  int top = G.adj[static_cast<size_t>(center)][0];
  int bot = G.adj[static_cast<size_t>(center)][1];
  const ColorSet& L1 = L.at(top);
  const ColorSet& L3 = L.at(center);
  const ColorSet& L2 = L.at(bot);
  if (L1 == L2 || L1 == L3 || L2 == L3)
    throw std::invalid_argument("triple lists must be mutually distinct");
  if (!is_isolated_vertex(G, L, center))
    throw std::invalid_argument("triple center must be isolated");

  int a2 = G.adj[static_cast<size_t>(top)][0];
  int c2 = G.adj[static_cast<size_t>(bot)][1];
  auto r0 = [&](int u) { return G.adj[static_cast<size_t>(u)][4]; };
  auto r1 = [&](int u) { return G.adj[static_cast<size_t>(u)][5]; };

  if (band_matches(G, L, a2, top, Drift::EarlyStep, L1) &&
      band_matches(G, L, bot, c2, Drift::Straight, L2)) {
    PairConfiguration out{PairTag::VIII, center, {}};
    push_band(G, a2, top, Drift::EarlyStep, 1, out.witness);
    push_band(G, bot, c2, Drift::Straight, 2, out.witness);
    out.witness.emplace_back(center, 3);
    return out;
  }
  if (band_matches(G, L, a2, top, Drift::Diagonal, L1) &&
      band_matches(G, L, bot, c2, Drift::LateStep, L2)) {
    PairConfiguration out{PairTag::IX, center, {}};
    push_band(G, a2, top, Drift::Diagonal, 1, out.witness);
    push_band(G, bot, c2, Drift::LateStep, 2, out.witness);
    out.witness.emplace_back(center, 3);
    return out;
  }
  int iso = r0(r1(center));
  if (band_matches(G, L, a2, top, Drift::EarlyStep, L1) &&
      band_matches(G, L, bot, c2, Drift::LateStep, L2)) {
    const ColorSet& L4 = L.at(iso);
    if (L4 != L1 && L4 != L2 && is_isolated_vertex(G, L, iso)) {
      PairConfiguration out{PairTag::X, center, {}};
      push_band(G, a2, top, Drift::EarlyStep, 1, out.witness);
      push_band(G, bot, c2, Drift::LateStep, 2, out.witness);
      out.witness.emplace_back(center, 3);
      out.witness.emplace_back(iso, 4);
      return out;
    }
  }

  throw ConsistencyError("isolated triple matches no configuration");
}

}  // namespace toro

#include "torocolor/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace toro {

namespace {

struct Palette {
  ColorSet colors;  // sorted; bit k of a mask stands for colors[k]
  uint64_t mask_of(const ColorSet& s) const {
    uint64_t m = 0;
    for (Color c : s) {
      auto it = std::lower_bound(colors.begin(), colors.end(), c);
      m |= uint64_t{1} << (it - colors.begin());
    }
    return m;
  }
};

Palette build_palette(const std::vector<ColorSet>& lists) {
  ColorSet all;
  for (const auto& l : lists)
    for (Color c : l) all.push_back(c);
  normalize(all);
  if (all.size() > 64) throw std::invalid_argument("oracle: more than 64 distinct colors");
  return {all};
}

struct Searcher {
  const AdjLists& adj;
  std::vector<uint64_t> mask;
  std::vector<int> color;  // palette index or -1
  long long budget;
  SearchStats stats;
  bool out_of_budget = false;
  int colored_count = 0;

  Searcher(const AdjLists& a, std::vector<uint64_t> m, long long b)
      : adj(a), mask(std::move(m)), color(a.size(), -1), budget(b) {}

  // Assigns v := c (a palette index), prunes neighbor masks, and follows any
  // chain of forced singletons. Returns false on an emptied list; `trail`
  // records every (vertex, removed-bits) and every assignment for undo.
  struct TrailEntry {
    int v;
    uint64_t removed;  // 0 marks an assignment entry
  };

  bool assign(int v, int c, std::vector<TrailEntry>& trail, std::vector<int>& forced) {
    stats.nodes++;
    if (stats.nodes > budget) {
      out_of_budget = true;
      return false;
    }
    color[v] = c;
    colored_count++;
    stats.max_depth = std::max(stats.max_depth, colored_count);
    trail.push_back({v, 0});
    uint64_t bit = uint64_t{1} << c;
    for (int u : adj[v]) {
      if (color[u] >= 0) {
        if (color[u] == c) return false;  // reachable only via forced chains
        continue;
      }
      if (mask[u] & bit) {
        mask[u] &= ~bit;
        trail.push_back({u, bit});
        if (mask[u] == 0) return false;
        if (std::popcount(mask[u]) == 1) forced.push_back(u);
      }
    }
    return true;
  }

  void undo(std::vector<TrailEntry>& trail, size_t mark) {
    while (trail.size() > mark) {
      auto [v, removed] = trail.back();
      trail.pop_back();
      if (removed == 0) {
        color[v] = -1;
        colored_count--;
      } else {
        mask[v] |= removed;
      }
    }
  }

  bool step(int v, int c, std::vector<TrailEntry>& trail) {
    std::vector<int> forced;
    if (!assign(v, c, trail, forced)) return false;
    for (size_t k = 0; k < forced.size(); ++k) {
      int u = forced[k];
      if (color[u] >= 0) continue;
      int fc = std::countr_zero(mask[u]);
      if (!assign(u, fc, trail, forced)) return false;
    }
    return true;
  }

  int pick() const {
    int best = -1, bestcnt = 65;
    for (size_t v = 0; v < adj.size(); ++v) {
      if (color[v] >= 0) continue;
      int cnt = std::popcount(mask[v]);
      if (cnt < bestcnt) {
        bestcnt = cnt;
        best = static_cast<int>(v);
      }
    }
    return best;
  }

  bool solve() {
    int v = pick();
    if (v < 0) return true;
    uint64_t avail = mask[v];
    while (avail) {
      int c = std::countr_zero(avail);
      avail &= avail - 1;
      std::vector<TrailEntry> trail;
      if (step(v, c, trail)) {
        if (solve()) return true;
      }
      undo(trail, 0);
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

OracleResult is_L_colorable(const AdjLists& adj, const std::vector<ColorSet>& lists,
                            long long budget) {
  if (adj.size() != lists.size())
    throw std::invalid_argument("is_L_colorable: list count must match vertex count");
  OracleResult res;
  Palette pal = build_palette(lists);
  std::vector<uint64_t> masks(lists.size());
  for (size_t v = 0; v < lists.size(); ++v) masks[v] = pal.mask_of(lists[v]);
  Searcher sr(adj, std::move(masks), budget);
  bool ok = sr.solve();
  res.stats = sr.stats;
  if (sr.out_of_budget) {
    res.status = OracleResult::Status::BudgetExceeded;
    return res;
  }
  if (!ok) {
    res.status = OracleResult::Status::No;
    return res;
  }
  res.status = OracleResult::Status::Yes;
  res.witness.assign(adj.size(), -1);
  for (size_t v = 0; v < adj.size(); ++v) res.witness[v] = pal.colors[sr.color[v]];
  return res;
}

namespace {

long long count_rec(const AdjLists& adj, std::vector<uint64_t>& mask, std::vector<int>& color,
                    const std::vector<int>& frontier, size_t idx) {
  if (idx == frontier.size()) return 1;
  int v = frontier[idx];
  long long total = 0;
  uint64_t avail = mask[v];
  while (avail) {
    int c = std::countr_zero(avail);
    avail &= avail - 1;
    uint64_t bit = uint64_t{1} << c;
    color[v] = c;
    std::vector<int> touched;
    for (int u : adj[v]) {
      if (color[u] >= 0 || !(mask[u] & bit)) continue;
      mask[u] &= ~bit;
      touched.push_back(u);
    }
    total += count_rec(adj, mask, color, frontier, idx + 1);
    for (int u : touched) mask[u] |= bit;
    color[v] = -1;
  }
  return total;
}

}  // namespace

long long count_extensions(const AdjLists& adj, const std::vector<ColorSet>& lists,
                           const PartialColoring& fixed, const std::vector<int>& frontier) {
  if (adj.size() != lists.size() || fixed.size() != lists.size())
    throw std::invalid_argument("count_extensions: size mismatch");
  Palette pal = build_palette(lists);
  std::vector<uint64_t> mask(lists.size());
  std::vector<int> color(lists.size(), -1);
  for (size_t v = 0; v < lists.size(); ++v) mask[v] = pal.mask_of(lists[v]);
  for (size_t v = 0; v < fixed.size(); ++v) {
    if (fixed[v] < 0) continue;
    auto it = std::lower_bound(pal.colors.begin(), pal.colors.end(), fixed[v]);
    int c = (it != pal.colors.end() && *it == fixed[v]) ? static_cast<int>(it - pal.colors.begin())
                                                        : 64;
    color[v] = c;
    if (c < 64) {
      uint64_t bit = uint64_t{1} << c;
      for (int u : adj[v]) {
        if (color[u] < 0) mask[u] &= ~bit;
      }
    }
  }
  for (int v : frontier) {
    if (color[v] >= 0) throw std::invalid_argument("count_extensions: frontier vertex is fixed");
  }
  return count_rec(adj, mask, color, frontier, 0);
}

namespace {

void k_subsets(const ColorSet& universe, int k, std::vector<ColorSet>& out) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  int m = static_cast<int>(universe.size());
  while (true) {
    ColorSet s;
    for (int i : idx) s.push_back(universe[i]);
    out.push_back(std::move(s));
    int p = k - 1;
    while (p >= 0 && idx[p] == m - k + p) --p;
    if (p < 0) break;
    idx[p]++;
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

ChoosableResult is_k_choosable_small(const AdjLists& adj, int k, const ColorSet& universe) {
  int n = static_cast<int>(adj.size());
  if (n > 10) throw std::invalid_argument("is_k_choosable_small: n must be <= 10");
  if (static_cast<int>(universe.size()) > k + 2)
    throw std::invalid_argument("is_k_choosable_small: universe must have <= k+2 colors");
  if (static_cast<int>(universe.size()) < k)
    throw std::invalid_argument("is_k_choosable_small: universe smaller than k");
  std::vector<ColorSet> subsets;
  k_subsets(universe, k, subsets);
  std::vector<size_t> pickidx(n, 0);
  std::vector<ColorSet> lists(n);
  while (true) {
    for (int v = 0; v < n; ++v) lists[v] = subsets[pickidx[v]];
    auto res = is_L_colorable(adj, lists, 1LL << 60);
    if (res.status == OracleResult::Status::No) return {false, lists};
    int p = n - 1;
    while (p >= 0 && pickidx[p] + 1 == subsets.size()) {
      pickidx[p] = 0;
      --p;
    }
    if (p < 0) break;
    pickidx[p]++;
  }
  return {true, {}};
}

}  // namespace toro

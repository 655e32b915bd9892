#pragma once
#include <algorithm>
#include <cstdint>
#include <vector>

namespace toro {

using Color = int;
// Sorted, duplicate-free. All set algebra below assumes and preserves that.
using ColorSet = std::vector<Color>;

inline ColorSet make_set(std::initializer_list<Color> xs) {
  ColorSet s(xs);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline void normalize(ColorSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool contains(const ColorSet& s, Color c) {
  return std::binary_search(s.begin(), s.end(), c);
}

inline ColorSet set_union(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ColorSet set_inter(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ColorSet set_minus(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const ColorSet& a, const ColorSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline void erase_color(ColorSet& s, Color c) {
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it != s.end() && *it == c) s.erase(it);
}

inline void insert_color(ColorSet& s, Color c) {
  auto it = std::lower_bound(s.begin(), s.end(), c);
  if (it == s.end() || *it != c) s.insert(it, c);
}

}  // namespace toro

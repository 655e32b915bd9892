#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torocolor/color_set.hpp"
#include "torocolor/lists.hpp"
#include "torocolor/torus.hpp"

namespace toro {

struct Orientation {
  int n = 0;
  AdjLists succ;

  int out_degree(int v) const {
    return static_cast<int>(succ[static_cast<size_t>(v)].size());
  }
  // Symmetric closure with duplicates removed.
  AdjLists underlying() const;
};

// Independent set such that every vertex outside it has a successor inside.
// Requires an orientation free of odd directed cycles; a parity clash inside
// a strongly connected block reports the breach.
std::vector<int> find_kernel(const Orientation& D);

// Reference implementation for tests: scans all vertex subsets. n <= 20.
std::vector<int> find_kernel_exhaustive(const Orientation& D);

// Colors greedily by color value: each round places the smallest remaining
// color on a kernel of the vertices still listing it. Needs
// |L(v)| >= out_degree(v) + 1 everywhere and no odd directed cycle.
PartialColoring bbs_color(const Orientation& D, const ListAssignment& L);

// Proper coloring of a cycle (positions 0..m-1, consecutive adjacent, wrap)
// choosing per vertex from its own list; smallest feasible color wins ties.
// Returns nothing exactly when the lists admit no proper coloring.
std::optional<PartialColoring> color_cycle(const std::vector<ColorSet>& lists);

// Same for a path (no wrap edge).
std::optional<PartialColoring> color_path(const std::vector<ColorSet>& lists);

// Caps each list to the cylinder profile size (4 on the marked first-column
// pair, 3 on other exterior vertices, 5 on interior ones), keeping smallest
// colors; rejects lists below profile size.
ListAssignment fit_cylinder_lists(const Cylinder& C, const ListAssignment& L,
                                  int j_hi);

// Colors a cylinder whose lists match the profile exactly: peels columns from
// the free side by cycle coloring, then finishes the last three columns
// through a fixed zigzag ending on a triangle.
PartialColoring color_cylinder(const Cylinder& C, const ListAssignment& L,
                               int j_hi);

// For the diamond with independent pair {x, y} over {a, b}: picks colors for
// x and y removing at most one color from La and at most one from Lb.
// Requires |La| + |Lb| = |Lx| + |Ly|.
std::pair<Color, Color> reduce_k4_minus(const ColorSet& La, const ColorSet& Lb,
                                        const ColorSet& Lx, const ColorSet& Ly);

struct Bipartite {
  int left = 0;
  int right = 0;
  // adj[a] lists right-side indices 0..right-1 for each left vertex a.
  AdjLists adj;
};

struct Matching {
  // (left index, right index) pairs.
  std::vector<std::pair<int, int>> edges;
};

Matching perfect_matching_regular_bipartite(const Bipartite& B, int degree);

// Combined vertex indexing: left side first, then right side offset by
// B.left. Lists must have >= 3 colors on the left and >= 2 on the right.
// Removes a perfect matching, orients the leftover even cycles coherently and
// the matching edges left-to-right, then colors by kernel peeling.
PartialColoring color_bipartite_3regular(const Bipartite& B,
                                         const ListAssignment& L);

}  // namespace toro

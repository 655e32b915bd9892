#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torocolor/lists.hpp"
#include "torocolor/torus.hpp"

namespace toro {

enum class SolveStatus { Colored, TrivialIdentical, Unsupported };

// Which branch of the cascade produced the coloring.
enum class ExitPath {
  None,
  CoverExit,      // a list escapes the union over one side pair
  PairExitA,      // vertical pair, both outer diagonal lists differ
  PairExitB,      // vertical pair, upper diagonal and shared left differ
  PairExitC,      // vertical pair, shared left and lower diagonal differ
  SupportExit,    // equal-list cross edge without an equal-list apex
  TriangleExit,   // monochromatic triangle without a vertical extension
  TwoStep,        // the main column-by-column pipeline
  Sequential,     // wrap-around band of K4 blocks, one column
  Gadget,         // two-column diamond schedule
  Identical,      // backtracking on a common palette or plain lists
};

const char* to_string(SolveStatus s);
const char* to_string(ExitPath p);

// Bookkeeping of the main pipeline's first step, in original coordinates.
struct CaseOnePlan {
  // Original column rotated to position 1 and the rows rotated to (s, s-1).
  int base_column = 1;
  std::pair<int, int> anchor_rows{0, 0};
  // True when the alternate set sits on the shifted rows (s-1, s-3, ...).
  bool shifted_alternates = false;
  std::vector<int> alternates;                      // column-3 vertex ids
  std::vector<std::pair<int, int>> tight_pairs;     // pairs colored in stage 1
  std::vector<std::pair<int, int>> stage_colors;    // (vertex, color) in order
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unsupported;
  std::optional<PartialColoring> coloring;
  ExitPath exit_path = ExitPath::None;
  long long total_touches = 0;
  int max_touches_per_vertex = 0;
  // False on the backtracking fallback, which carries no time guarantee.
  bool linear_time_path = true;
  std::string message;
  std::optional<CaseOnePlan> plan;
};

struct TouchStats {
  long long total = 0;
  int max_per_vertex = 0;
  bool linear_time_path = true;
};

TouchStats touch_counter(const SolveOutcome& out);

// Total, proper, and drawn from the lists.
bool verify_coloring(const Torus& G, const ListAssignment& L,
                     const PartialColoring& c);

// Dispatches on classify(G); rebases through the recorded isomorphism when
// the qualifying tuple differs from the input labeling. Requires a
// 5-assignment.
SolveOutcome solve(const Torus& G, const ListAssignment& L);

// r >= 4: criteria scan, violation exits with a cylinder peel, otherwise the
// anchored two-step pipeline.
SolveOutcome solve_case1(const Torus& G, const ListAssignment& L);

// T(1,s,2), s >= 9, s != 11: sequential coloring plus a six-vertex endgame.
SolveOutcome solve_case2(const Torus& G, const ListAssignment& L);

// T(2,s,t), s and t even, t not in {0, s-2}: diamond schedule on column 2,
// then the column-1 cycle. Normalizes t beyond s/2-1 through the mirror
// isomorphism t -> s-t-2.
SolveOutcome solve_case3(const Torus& G, const ListAssignment& L);

// Backtracking with saturation-first vertex order. Works on arbitrary lists;
// the identical-list case is its intended home. Refuses the seven- and
// eleven-vertex exceptions.
SolveOutcome solve_identical(const Torus& G, const ListAssignment& L);

}  // namespace toro

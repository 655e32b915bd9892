#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "torocolor/color_set.hpp"
#include "torocolor/torus.hpp"

namespace toro {

using AdjLists = std::vector<std::vector<int>>;

// Vertex -> color, -1 for uncolored.
using PartialColoring = std::vector<int>;

struct ListAssignment {
  int n = 0;
  std::vector<ColorSet> lists;

  const ColorSet& at(int v) const { return lists[static_cast<size_t>(v)]; }
};

ListAssignment make_assignment(int n, std::vector<ColorSet> lists);

// Per-vertex neighbor vectors copied out of the fixed-slot torus table.
AdjLists to_adj_lists(const Torus& G);

bool validate_k_assignment(const ListAssignment& L, int k);

bool all_lists_identical(const ListAssignment& L);

// Removes the colors of colored neighbors from each uncolored list and pins
// colored vertices to their singleton. Colored vertices must form a proper
// partial coloring.
ListAssignment residual(const ListAssignment& L, const AdjLists& adj,
                        const PartialColoring& c);
ListAssignment residual(const ListAssignment& L, const Torus& G,
                        const PartialColoring& c);
ListAssignment residual(const ListAssignment& L, const Cylinder& C,
                        const PartialColoring& c);

// True when no edge joins two equal colored endpoints.
bool is_proper_partial(const AdjLists& adj, const PartialColoring& c);
bool is_proper_partial(const Torus& G, const PartialColoring& c);

// Proper, total, and every color drawn from the vertex's own list.
bool is_valid_list_coloring(const AdjLists& adj, const ListAssignment& L,
                            const PartialColoring& c);
bool is_valid_list_coloring(const Torus& G, const ListAssignment& L,
                            const PartialColoring& c);

// k distinct colors per vertex drawn uniformly from [0, universe).
// Deterministic for a fixed seed across platforms.
ListAssignment random_assignment(int n, int k, int universe, uint64_t seed);

// Uniform draw from [0, m) by rejection sampling.
uint64_t bounded_random(std::mt19937_64& rng, uint64_t m);

enum class CriterionTag {
  Cover,             // each list covered by the union over either side pair
  PairPattern,       // vertical pairs with distinct lists match a side shape
  EqualPairSupport,  // equal-list cross-column edges have an equal-list apex
  TriangleSupport,   // monochromatic triangles extend along the off column
};

std::string to_string(CriterionTag tag);

struct Violation {
  CriterionTag tag;
  // The mirrored form (right-side neighbors) failed rather than the left one.
  bool right_side = false;
  // For PairPattern: which replacement condition fired (0, 1, or 2).
  int exit_variant = -1;
  std::vector<int> witness;
};

struct CriteriaReport {
  bool all_identical = false;
  std::vector<Violation> violations;

  bool ok() const { return !all_identical && violations.empty(); }
};

// Scans the four structural criteria that the cascade solver relies on,
// recording every violation: Cover entries first, then PairPattern,
// EqualPairSupport, TriangleSupport. Relabeling the assignment through the
// flip automorphism maps the report onto the flipped report bijectively.
// Requires r >= 4.
CriteriaReport check_criteria(const Torus& G, const ListAssignment& L);

struct ComponentInfo {
  ColorSet list_value;
  std::vector<int> members;
  bool isolated = false;
};

// Maximal connected subgraphs on which the list is constant, ordered by
// smallest member.
std::vector<ComponentInfo> list_class_components(const Torus& G,
                                                 const ListAssignment& L);

// No neighbor carries the same list.
bool is_isolated_vertex(const Torus& G, const ListAssignment& L, int v);

enum class PairTag { A, B, C, I, II, III, IV, V, VI, VII, VIII, IX, X };

std::string to_string(PairTag tag);

struct PairConfiguration {
  PairTag tag;
  int anchor = -1;
  // (vertex, list id) with ids 1..4 naming the lists of the matched shape.
  std::vector<std::pair<int, int>> witness;
};

// Matches the neighborhood of the vertical pair (top, down(top)), whose two
// lists differ and whose endpoints both have an equal-list neighbor, against
// the seven rightward shapes; first match wins. Throws ConsistencyError when
// nothing matches.
PairConfiguration classify_pair(const Torus& G, const ListAssignment& L,
                                int top);

// Same for the triple around an isolated center with distinct lists above and
// below; returns one of the three center-anchored shapes.
PairConfiguration classify_iso_triple(const Torus& G, const ListAssignment& L,
                                      int center);

}  // namespace toro

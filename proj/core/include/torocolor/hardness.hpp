#pragma once
#include <optional>
#include <string>

#include "torocolor/lists.hpp"
#include "torocolor/torus.hpp"

namespace toro {

// The construction families of 3-assignments that defeat 3-choosability on
// the 3-chromatic grids.
enum class HardFamily {
  ColumnsR4,
  RowsR2,
  RowsR3,
  CirculantMid,
  CirculantUpper,
  CirculantT4,
  CirculantQuarter,
  CirculantThird,
  SpecialT262,
  SpecialT393,
};

const char* to_string(HardFamily f);

struct BaseLists {
  ColorSet l1, l2, l3;
};

// The three fixed 3-lists used by every family.
BaseLists base_lists();

struct HardAssignment {
  HardFamily family = HardFamily::ColumnsR4;
  ListAssignment lists;
  // Nonempty when the assignment was built on an isomorphic relabeling and
  // pulled back; names that relabeling.
  std::string via;
};

// The uncolorable 3-assignment for a simple 3-chromatic grid, or nullopt
// (with *reason filled) when no construction covers it. filler is the list
// given to vertices outside the structured blocks.
std::optional<HardAssignment> hard_assignment(const Torus& G,
                                              std::string* reason = nullptr,
                                              const ColorSet& filler = {5, 6, 7});

enum class HardnessVerdict { ConfirmedUncolorable, FoundColoring, BudgetExceeded };

const char* to_string(HardnessVerdict v);

struct HardnessReport {
  HardnessVerdict verdict = HardnessVerdict::BudgetExceeded;
  std::optional<PartialColoring> witness;  // set when a coloring was found
  long long nodes = 0;
};

// Exhaustive check of a claimed witness: ConfirmedUncolorable means the
// backtracker proved no proper coloring exists, within the node budget.
HardnessReport verify_hardness(const Torus& G, const ListAssignment& L,
                               long long budget);

}  // namespace toro

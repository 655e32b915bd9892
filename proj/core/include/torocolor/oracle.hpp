#pragma once
#include <cstdint>
#include <vector>

#include "torocolor/color_set.hpp"
#include "torocolor/lists.hpp"

namespace toro {

struct SearchStats {
  long long nodes = 0;
  int max_depth = 0;
};

struct OracleResult {
  enum class Status { Yes, No, BudgetExceeded };
  Status status = Status::No;
  PartialColoring witness;  // total proper coloring when status == Yes
  SearchStats stats;
};

// Exact list-colorability by backtracking: minimum-remaining-values vertex
// order (ties by index), ascending color order, forward pruning with forced
// propagation of singleton lists. budget bounds the number of color
// assignments explored; exceeding it yields BudgetExceeded, never a wrong
// Yes/No.
OracleResult is_L_colorable(const AdjLists& adj, const std::vector<ColorSet>& lists,
                            long long budget);

// Number of proper list-colorings of exactly the frontier vertices that extend
// `fixed`. Uncolored vertices outside the frontier impose no constraints.
long long count_extensions(const AdjLists& adj, const std::vector<ColorSet>& lists,
                           const PartialColoring& fixed, const std::vector<int>& frontier);

struct ChoosableResult {
  bool yes = true;
  std::vector<ColorSet> witness;  // an uncolorable k-assignment when yes == false
};

// One-sided exhaustive sweep: tries every assignment of k-subsets of
// `universe`. A negative answer is a certificate; a positive answer is only
// relative to the universe. Guarded to n <= 10 and |universe| <= k + 2.
ChoosableResult is_k_choosable_small(const AdjLists& adj, int k, const ColorSet& universe);

}  // namespace toro

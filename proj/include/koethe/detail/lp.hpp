#pragma once

#include <vector>

namespace koethe::detail {

struct PackingSolution {
  std::vector<double> x;
  double value = 0.0;
  bool optimal = false;
};

/// max c . x  s.t.  rows[i] . x <= 1, x >= 0, with c >= 0 and rows >= 0.
/// Dictionary simplex from the slack basis (feasible because the right-hand side
/// is positive); Dantzig pricing, switching to Bland's rule against cycling.
/// `optimal` is false when the problem is unbounded or the pivot budget runs out.
PackingSolution maximize_packing(const std::vector<double>& c,
                                 const std::vector<std::vector<double>>& rows);

}  // namespace koethe::detail

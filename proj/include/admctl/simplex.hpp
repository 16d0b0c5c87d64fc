#pragma once

#include <utility>
#include <vector>

#include "admctl/rational.hpp"

namespace admctl {

// Exact-rational LP of the covering shape used by the offline oracle:
//
//   minimize sum c_i x_i   subject to   A x >= b  (sparse rows),
//                                       0 <= x_i <= u_i.
//
// Solved by a dense two-phase primal simplex with Bland's rule; the instances
// are tiny (<= budget variables), so simplicity wins over speed.
struct CoveringLp {
  struct Row {
    std::vector<std::pair<int, Rat>> terms;
    Rat rhs;
  };
  std::vector<Rat> objective;
  std::vector<Rat> upper;
  std::vector<Row> rows;
};

struct LpSolution {
  Rat objective;
  std::vector<Rat> values;
};

// Requires the LP to be feasible (covering LPs with x = u feasible are).
LpSolution solve_covering_lp(const CoveringLp& lp);

}  // namespace admctl

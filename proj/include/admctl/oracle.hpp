#pragma once

#include <map>
#include <vector>

#include "admctl/instance.hpp"

namespace admctl {

// Exact offline optima on small instances; ground truth for every bound
// check in the harness.
struct OracleSolution {
  enum class Kind { IntegralAdmission, FractionalAdmission, Multicover };

  Kind kind;
  Rat cost;                         // C_OPT, or the fractional optimum
  std::vector<int> ids;             // rejected request ids / chosen set ids
  std::map<int, Rat> frac_weights;  // FractionalAdmission: optimal rejection fractions
};

inline constexpr int kDefaultOracleBudget = 22;

// Minimum-cost rejection set subject to every edge capacity, by
// branch-and-bound over accept/reject decisions with per-edge lower bounds.
OracleSolution integral_opt_admission(const NetworkInstance& net,
                                      const std::vector<Request>& requests,
                                      int budget = kDefaultOracleBudget);

// Optimal fractional rejection: minimize sum f_i p_i subject to
// sum_{i through e} f_i >= max(0, |through e| - cap_e) and 0 <= f_i <= 1,
// solved exactly in rational arithmetic.
OracleSolution fractional_opt_admission(const NetworkInstance& net,
                                        const std::vector<Request>& requests,
                                        int budget = kDefaultOracleBudget);

// Minimum-cost sub-family covering every element as often as it was
// demanded (distinct sets). Throws InfeasibleDemand when impossible.
OracleSolution opt_multicover(const SetCoverInstance& sc, const DemandSequence& demands,
                              int budget = kDefaultOracleBudget);

}  // namespace admctl

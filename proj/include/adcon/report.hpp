#pragma once

#include <limits>
#include <string>
#include <vector>

#include "adcon/model.hpp"

namespace adcon {

// Pseudo-index selecting "maximize principal utility over all actions".
inline constexpr int kBestTarget = -1;

// Result of one solver run. Money fields refer to the targeted action and
// stay NaN when no feasible contract was found. total_cost and action_costs
// include the setting's pay_surcharge; utility is R - T - D without it.
struct SolveReport {
  std::string algorithm;
  std::string variant = "det";
  bool feasible = false;
  bool best_mode = false;
  int target = -1;
  Contract contract;
  double expected_pay = std::numeric_limits<double>::quiet_NaN();     // T
  double inspection_cost = std::numeric_limits<double>::quiet_NaN();  // D
  double utility = std::numeric_limits<double>::quiet_NaN();          // R - T - D
  double total_cost = std::numeric_limits<double>::infinity();
  // Per-action minimal total cost; +inf = infeasible, NaN = not computed
  // (fixed-target runs fill only the target's entry).
  std::vector<double> action_costs;
  long long lp_solves = 0;
  long long points_evaluated = 0;   // grid search only
  double grid_resolution = 0.0;     // grid search only
  std::vector<std::string> warnings;
};

}  // namespace adcon

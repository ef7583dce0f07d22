#pragma once

#include <vector>

namespace adcon {

// Dense linear program:
//
//   minimize    c . x
//   subject to  a_ub x <= b_ub
//               a_eq x  = b_eq
//               x_j    >= lower_j   (lower empty means all zeros; -inf = free)
struct LpProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<double> lower;

  int num_vars() const { return static_cast<int>(c.size()); }
  void add_ub(std::vector<double> row, double rhs) {
    a_ub.push_back(std::move(row));
    b_ub.push_back(rhs);
  }
  void add_eq(std::vector<double> row, double rhs) {
    a_eq.push_back(std::move(row));
    b_eq.push_back(rhs);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Multiplier convention: with the Lagrangian
//   L(x, y, w) = c.x + y.(a_ub x - b_ub) + w.(a_eq x - b_eq),
// dual_ub holds y >= 0 and dual_eq holds the free w, so for problems with
// zero lower bounds an Optimal solution satisfies
//   objective = -(dual_ub . b_ub) - (dual_eq . b_eq)  up to reduced-cost
// terms on shifted bounds.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> dual_ub;
  std::vector<double> dual_eq;
  double phase1_infeasibility = 0.0;  // > 0 exactly when Infeasible
  long long iterations = 0;
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace adcon

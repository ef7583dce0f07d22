#include "adcon/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adcon/errors.hpp"
#include "adcon/lp.hpp"

namespace adcon {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprove = 1e-9;  // strict-improvement threshold for tie-breaks

// Calls fn(subset) for every subset of {0..ell-1} with size <= max_size,
// ordered by size then lexicographically, so the first incumbent found is
// the preferred one under the "fewer signals, then lexicographically
// smallest" tie-break.
template <typename Fn>
void for_each_subset(int ell, int max_size, Fn&& fn) {
  std::vector<int> idx;
  fn(idx);
  for (int size = 1; size <= std::min(ell, max_size); ++size) {
    idx.resize(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      fn(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == ell - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

struct ActionBest {
  bool feasible = false;
  double cost = kInf;  // T + D, surcharge excluded
  Contract contract;
};

void fill_report_from(SolveReport& rep, const Setting& s, int action, const ActionBest& best) {
  rep.target = action;
  rep.feasible = best.feasible;
  if (!best.feasible) return;
  rep.contract = best.contract;
  rep.expected_pay = expected_payment(s, best.contract, action);
  rep.inspection_cost = expected_inspection_cost(s, best.contract, action);
  rep.utility = expected_reward(s, action) - rep.expected_pay - rep.inspection_cost;
  rep.total_cost = rep.expected_pay + rep.inspection_cost + s.pay_surcharge;
  const int agent_pick = best_response(s, best.contract);
  if (agent_pick != action)
    rep.warnings.push_back("agent tie-break prefers action " + std::to_string(agent_pick + 1));
}

SolveReport enumerate_deterministic(const Setting& s, int target, int max_size,
                                    const char* algorithm) {
  const int n = s.num_actions();
  const int ell = s.num_signals();
  if (target != kBestTarget && (target < 0 || target >= n))
    throw PreconditionViolated("target action out of range");

  SolveReport rep;
  rep.algorithm = algorithm;
  rep.variant = "det";
  rep.best_mode = target == kBestTarget;
  rep.action_costs.assign(n, std::numeric_limits<double>::quiet_NaN());

  std::vector<int> targets;
  if (rep.best_mode)
    for (int i = 0; i < n; ++i) targets.push_back(i);
  else
    targets.push_back(target);

  std::vector<ActionBest> best(n);
  std::vector<double> p(ell, 0.0);
  for_each_subset(ell, max_size, [&](const std::vector<int>& subset) {
    std::fill(p.begin(), p.end(), 0.0);
    for (int k : subset) p[k] = 1.0;
    for (int i : targets) {
      MinpayResult res = minpay_fixed_policy(s, p, i, VariantConstraints::plain());
      ++rep.lp_solves;
      if (res.feasible && res.total_cost < best[i].cost - kImprove) {
        best[i].feasible = true;
        best[i].cost = res.total_cost;
        best[i].contract = std::move(res.contract);
      }
    }
  });

  for (int i : targets)
    rep.action_costs[i] = best[i].feasible ? best[i].cost + s.pay_surcharge : kInf;

  int chosen = target;
  if (rep.best_mode) {
    chosen = -1;
    double chosen_utility = -kInf;
    for (int i = 0; i < n; ++i) {
      if (!best[i].feasible) continue;
      const double utility = expected_reward(s, i) - best[i].cost;
      if (chosen < 0 || utility > chosen_utility + kImprove) {
        chosen = i;
        chosen_utility = utility;
      }
    }
    if (chosen < 0) return rep;  // nothing incentivizable at all
  }
  fill_report_from(rep, s, chosen, best[chosen]);
  return rep;
}

// Preconditions shared by the ISOP-specialized routines. Returns the shared
// outcome table.
const std::vector<std::vector<double>>& require_isop_mlrp(const Setting& s) {
  if (!check_isop(s))
    throw PreconditionViolated("outcome distributions differ across signals (ISOP required)");
  if (!check_mlrp(s.q0)) throw PreconditionViolated("q0 fails MLRP");
  if (!check_mlrp(s.qk[0])) throw PreconditionViolated("shared outcome table fails MLRP");
  return s.qk[0];
}

}  // namespace

SolveReport brute_force_optimal(const Setting& s, int target) {
  if (s.num_signals() > 20)
    throw EnumerationTooLarge("2^ell enumeration beyond 20 signals refused");
  return enumerate_deterministic(s, target, s.num_signals(), "brute_force");
}

SolveReport solve_constant_actions(const Setting& s, int target) {
  return enumerate_deterministic(s, target, s.num_actions() - 1, "constant_actions");
}

SolveReport solve_isop(const Setting& s) {
  const auto& q = require_isop_mlrp(s);
  const int n = s.num_actions();
  const int ell = s.num_signals();
  const int target = n - 1;

  SolveReport rep;
  rep.algorithm = "isop";
  rep.variant = "det";
  rep.target = target;
  rep.action_costs.assign(n, std::numeric_limits<double>::quiet_NaN());
  if (*std::max_element(s.c.begin(), s.c.end()) > s.c[target] + kMoneyTol)
    rep.warnings.push_back("targeted action does not have the maximal cost");

  // Payment anchors: the max-index uninspected signal the target reaches,
  // and for the inspected signal its max-index positive-mass outcome.
  int jstar = -1;
  for (int j = s.num_outcomes(0) - 1; j >= 0; --j)
    if (q[target][j] > 0) {
      jstar = j;
      break;
    }

  struct Policy {
    int inspected = -1;  // -1 = never inspect
    bool feasible = false;
    double cost = kInf;
    double s_pay = 0.0, t_pay = 0.0;
    int anchor = -1;
  };
  Policy best;
  bool have_best = false;

  for (int k1 = -1; k1 < ell; ++k1) {
    Policy pol;
    pol.inspected = k1;
    int k0 = -1;
    for (int k = ell - 1; k >= 0; --k)
      if (k != k1 && s.q0[target][k] > 0) {
        k0 = k;
        break;
      }
    pol.anchor = k0;

    const bool has_t = k1 >= 0 && s.q0[target][k1] > 0 && jstar >= 0;
    LpProblem lp;
    int s_var = -1, t_var = -1;
    if (k0 >= 0) {
      s_var = lp.num_vars();
      lp.c.push_back(s.q0[target][k0]);
    }
    if (has_t) {
      t_var = lp.num_vars();
      lp.c.push_back(s.q0[target][k1] * q[target][jstar]);
    }
    for (int rival = 0; rival < n; ++rival) {
      if (rival == target) continue;
      std::vector<double> row(lp.num_vars(), 0.0);
      if (s_var >= 0) row[s_var] = s.q0[rival][k0] - s.q0[target][k0];
      if (t_var >= 0)
        row[t_var] = s.q0[rival][k1] * q[rival][jstar] - s.q0[target][k1] * q[target][jstar];
      lp.add_ub(std::move(row), s.c[rival] - s.c[target]);
    }
    LpSolution sol = solve_lp(lp);
    ++rep.lp_solves;
    if (sol.status != LpStatus::Optimal) continue;
    pol.feasible = true;
    pol.s_pay = s_var >= 0 ? std::max(0.0, sol.x[s_var]) : 0.0;
    pol.t_pay = t_var >= 0 ? std::max(0.0, sol.x[t_var]) : 0.0;
    pol.cost = sol.objective + (k1 >= 0 ? s.q0[target][k1] * s.d[k1] : 0.0);
    if (!have_best || pol.cost < best.cost - kImprove) {
      best = pol;
      have_best = true;
    }
  }

  rep.feasible = have_best;
  if (!have_best) {
    rep.action_costs[target] = kInf;
    return rep;
  }

  Contract ct = zero_contract(s);
  if (best.inspected >= 0) ct.p[best.inspected] = 1.0;
  if (best.anchor >= 0) ct.s[best.anchor] = best.s_pay;
  if (best.inspected >= 0 && jstar >= 0 && best.t_pay > 0) ct.t[best.inspected][jstar] = best.t_pay;

  ActionBest ab;
  ab.feasible = true;
  ab.cost = best.cost;
  ab.contract = std::move(ct);
  SolveReport final_rep = rep;
  fill_report_from(final_rep, s, target, ab);
  final_rep.action_costs[target] = best.cost + s.pay_surcharge;
  return final_rep;
}

Contract prune_unpaid_inspections(const Setting& s, const Contract& ct) {
  const int ell = s.num_signals();
  for (int k = 0; k < ell; ++k)
    if (ct.p[k] > kProbTol && ct.p[k] < 1.0 - kProbTol)
      throw PreconditionViolated("pruning requires a deterministic inspection policy");
  Contract out = ct;
  for (int k = 0; k < ell; ++k) {
    if (out.p[k] < 1.0 - kProbTol) continue;
    bool all_zero = true;
    for (double t : out.t[k])
      if (t > kMoneyTol) all_zero = false;
    if (!all_zero) continue;
    out.s[k] = (1.0 - out.p[k]) * out.s[k];
    out.p[k] = 0.0;
  }
  return out;
}

bool isop_dual_check(const Setting& s, const std::vector<double>& p) {
  const auto& q = require_isop_mlrp(s);
  const int target = s.num_actions() - 1;
  for (double v : p)
    if (v > kProbTol && v < 1.0 - kProbTol)
      throw PreconditionViolated("dual check requires a deterministic policy");

  detail::MinpayLp built =
      detail::minpay_build_lp(s, p, target, VariantConstraints::plain());
  LpSolution sol = solve_lp(built.lp);
  if (sol.status != LpStatus::Optimal) return false;

  // Allowed binding atoms.
  int k0star = -1, k1star = -1;
  for (int k = s.num_signals() - 1; k >= 0; --k) {
    if (k0star < 0 && p[k] <= kProbTol && s.q0[target][k] > 0) k0star = k;
    if (k1star < 0 && p[k] > kProbTol) k1star = k;
  }
  int jstar = -1;
  for (int j = s.num_outcomes(0) - 1; j >= 0; --j)
    if (q[target][j] > 0) {
      jstar = j;
      break;
    }

  // A live LP column's dual constraint is binding when its reduced cost
  // c_col + sum_rows y_row * A[row][col] vanishes.
  auto binding = [&](int col) {
    if (col < 0) return false;
    double rc = built.lp.c[col];
    for (size_t row = 0; row < built.lp.a_ub.size(); ++row)
      rc += sol.dual_ub[row] * built.lp.a_ub[row][col];
    return rc <= 1e-7;
  };

  for (int k = 0; k < s.num_signals(); ++k) {
    const int scol = built.s_col[k];
    if (scol >= 0 && binding(scol) && k != k0star) return false;
    for (int j = 0; j < s.num_outcomes(k); ++j) {
      const int tcol = built.t_col[k][j];
      if (tcol >= 0 && binding(tcol) && !(k == k1star && j == jstar)) return false;
    }
  }
  return true;
}

}  // namespace adcon

#include "adcon/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adcon/errors.hpp"

namespace adcon {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImprove = 1e-12;

Setting zero_inspection_cost_copy(const Setting& s) {
  Setting relaxed = s;
  std::fill(relaxed.d.begin(), relaxed.d.end(), 0.0);
  return relaxed;
}

struct ComiSingle {
  bool feasible = false;
  double cost = kInf;  // T of the relaxation, no surcharge
  bool attained = false;
  Contract witness;
};

ComiSingle comi_for_action(const Setting& s, const Setting& relaxed, int i) {
  const int ell = s.num_signals();
  ComiSingle out;
  std::vector<double> ones(ell, 1.0);
  MinpayResult at_one = minpay_fixed_policy(relaxed, ones, i, VariantConstraints::plain());
  if (!at_one.feasible) return out;
  out.feasible = true;
  out.cost = at_one.total_cost;
  out.witness = std::move(at_one.contract);

  // Attainment test: restrict inspection to signals that are free for the
  // target and check that the optimum survives.
  std::vector<double> p_free(ell, 0.0);
  for (int k = 0; k < ell; ++k) p_free[k] = s.q0[i][k] * s.d[k] > 0 ? 0.0 : 1.0;
  MinpayResult restricted = minpay_fixed_policy(relaxed, p_free, i, VariantConstraints::plain());
  out.attained = restricted.feasible && restricted.total_cost <= out.cost + 1e-7;
  return out;
}

}  // namespace

ComiReport comi_supremum(const Setting& s, int target) {
  const int n = s.num_actions();
  if (target != kBestTarget && (target < 0 || target >= n))
    throw PreconditionViolated("target action out of range");
  const Setting relaxed = zero_inspection_cost_copy(s);

  ComiReport rep;
  rep.best_mode = target == kBestTarget;
  if (!rep.best_mode) {
    ComiSingle one = comi_for_action(s, relaxed, target);
    rep.feasible = one.feasible;
    rep.target = target;
    if (!one.feasible) return rep;
    rep.total_cost_sup = one.cost + s.pay_surcharge;
    rep.utility_sup = expected_reward(s, target) - one.cost;
    rep.attained = one.attained;
    rep.witness = std::move(one.witness);
    return rep;
  }

  for (int i = 0; i < n; ++i) {
    ComiSingle one = comi_for_action(s, relaxed, i);
    if (!one.feasible) continue;
    const double utility = expected_reward(s, i) - one.cost;
    if (!rep.feasible || utility > rep.utility_sup + 1e-9) {
      rep.feasible = true;
      rep.target = i;
      rep.total_cost_sup = one.cost + s.pay_surcharge;
      rep.utility_sup = utility;
      rep.attained = one.attained;
      rep.witness = std::move(one.witness);
    }
  }
  return rep;
}

Contract comi_scale_down(const Contract& ct, int k, double p_new) {
  if (k < 0 || k >= static_cast<int>(ct.p.size()))
    throw PreconditionViolated("signal index out of range");
  const double p_old = ct.p[k];
  if (!(p_new > 0.0) || !(p_new < p_old))
    throw PreconditionViolated("requires 0 < p_new < p[k]");
  Contract out = ct;
  out.p[k] = p_new;
  out.s[k] = ct.s[k] * (1.0 - p_old) / (1.0 - p_new);
  for (double& t : out.t[k]) t *= p_old / p_new;
  return out;
}

Contract det_to_uni(const Setting& s, const Contract& ct, int i) {
  if (i < 0 || i >= s.num_actions()) throw PreconditionViolated("action index out of range");
  const int ell = s.num_signals();
  for (int k = 0; k < ell; ++k)
    if (ct.p[k] > kProbTol && ct.p[k] < 1.0 - kProbTol)
      throw PreconditionViolated("requires a deterministic contract");
  Contract out = ct;
  for (int k = 0; k < ell; ++k) {
    if (out.p[k] <= kProbTol) {
      std::fill(out.t[k].begin(), out.t[k].end(), out.s[k]);
    } else {
      double cap = 0.0;
      for (double t : out.t[k]) cap = std::max(cap, t);
      out.s[k] = s.d[k] + cap;
    }
  }
  return out;
}

Contract to_always_inspect(const Setting& s, const Contract& ct) {
  const int ell = s.num_signals();
  Contract out = ct;
  for (int k = 0; k < ell; ++k) {
    for (int j = 0; j < s.num_outcomes(k); ++j)
      out.t[k][j] = (1.0 - ct.p[k]) * ct.s[k] + ct.p[k] * ct.t[k][j];
    out.p[k] = 1.0;
  }
  return out;
}

SolveReport search_randomized(const Setting& s, int target, Variant variant,
                              const GridConfig& grid) {
  const int n = s.num_actions();
  const int ell = s.num_signals();
  if (target < 0 || target >= n) throw PreconditionViolated("target action out of range");
  if (variant == Variant::Plain)
    throw PreconditionViolated("search covers the constrained variants only");
  if (ell > 6) throw SearchGuardExceeded("grid search refused beyond 6 signals");

  SolveReport rep;
  rep.algorithm = "grid_search";
  rep.variant = variant_name(variant);
  rep.target = target;
  rep.action_costs.assign(n, std::numeric_limits<double>::quiet_NaN());
  double final_step = grid.initial_step;
  for (int r = 0; r < grid.refine_rounds; ++r) final_step /= grid.refine_factor;
  rep.grid_resolution = final_step;

  double best_cost = kInf;
  std::vector<double> best_p;
  Contract best_contract;

  // Evaluates one policy point; returns its cost (+inf when infeasible) and
  // updates the global incumbent.
  auto evaluate = [&](const std::vector<double>& p) {
    VariantConstraints vc = variant == Variant::CoNI ? VariantConstraints::coni()
                            : variant == Variant::UMI ? VariantConstraints::umi(p)
                                                      : VariantConstraints::uni(p);
    MinpayResult res = minpay_fixed_policy(s, p, target, vc);
    ++rep.lp_solves;
    ++rep.points_evaluated;
    if (res.feasible && res.total_cost < best_cost - kImprove) {
      best_cost = res.total_cost;
      best_p = p;
      best_contract = std::move(res.contract);
    }
    return res.feasible ? res.total_cost : kInf;
  };

  // Product grid over the free coordinates of one support choice, refined
  // around this support's own incumbent. free[k] = true means coordinate k
  // ranges over the grid; otherwise p_k stays 0.
  auto search_support = [&](const std::vector<bool>& free, bool allow_zero) {
    std::vector<int> free_idx;
    for (int k = 0; k < ell; ++k)
      if (free[k]) free_idx.push_back(k);
    std::vector<double> p(ell, 0.0);
    if (free_idx.empty()) {
      evaluate(p);
      return;
    }

    double step = grid.initial_step;
    double local_cost = kInf;
    std::vector<double> local_p;
    std::vector<std::pair<double, double>> window(free_idx.size(), {allow_zero ? 0.0 : -1.0, 1.0});
    for (int round = 0; round <= grid.refine_rounds; ++round) {
      // Candidate values per free coordinate for this round.
      std::vector<std::vector<double>> values(free_idx.size());
      for (size_t a = 0; a < free_idx.size(); ++a) {
        double lo = window[a].first;
        const double hi = window[a].second;
        if (lo < 0.0) lo = step;  // probabilities stay strictly positive
        for (int i = 0;; ++i) {
          const double v = lo + i * step;
          if (v > hi + 1e-12) break;
          values[a].push_back(std::min(v, 1.0));
        }
      }
      std::vector<size_t> pos(free_idx.size(), 0);
      while (true) {
        for (size_t a = 0; a < free_idx.size(); ++a) p[free_idx[a]] = values[a][pos[a]];
        const double cost = evaluate(p);
        if (cost < local_cost - kImprove) {
          local_cost = cost;
          local_p = p;
        }
        size_t a = 0;
        while (a < free_idx.size() && ++pos[a] == values[a].size()) pos[a++] = 0;
        if (a == free_idx.size()) break;
      }
      if (round == grid.refine_rounds || local_p.empty()) break;
      const double next_step = step / grid.refine_factor;
      for (size_t a = 0; a < free_idx.size(); ++a) {
        const double center = local_p[free_idx[a]];
        double lo = std::max(center - step, 0.0);
        if (!allow_zero) lo = std::max(lo, next_step);
        window[a] = {lo, std::min(center + step, 1.0)};
      }
      step = next_step;
    }
  };

  if (variant == Variant::CoNI) {
    search_support(std::vector<bool>(ell, true), /*allow_zero=*/true);
  } else {
    // Every support set: coordinates in the set are pinned to zero.
    for (int mask = 0; mask < (1 << ell); ++mask) {
      std::vector<bool> free(ell);
      for (int k = 0; k < ell; ++k) free[k] = !(mask & (1 << k));
      search_support(free, /*allow_zero=*/false);
    }
  }

  rep.feasible = std::isfinite(best_cost);
  if (!rep.feasible) {
    rep.action_costs[target] = kInf;
    return rep;
  }
  rep.contract = std::move(best_contract);
  rep.expected_pay = expected_payment(s, rep.contract, target);
  rep.inspection_cost = expected_inspection_cost(s, rep.contract, target);
  rep.utility = expected_reward(s, target) - rep.expected_pay - rep.inspection_cost;
  rep.total_cost = rep.expected_pay + rep.inspection_cost + s.pay_surcharge;
  rep.action_costs[target] = rep.total_cost;
  const int agent_pick = best_response(s, rep.contract);
  if (agent_pick != target)
    rep.warnings.push_back("agent tie-break prefers action " + std::to_string(agent_pick + 1));
  return rep;
}

}  // namespace adcon

#include "adcon/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "adcon/errors.hpp"
#include "adcon/lp.hpp"
#include "adcon/minpay.hpp"
#include "adcon/solvers.hpp"

namespace adcon {

namespace {

// Runs fn(0..count-1) on up to `jobs` threads; results must be written to
// distinct slots by index. The first exception, if any, is rethrown.
void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

void require_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw PreconditionViolated(std::string(what) + " grid is empty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw PreconditionViolated(std::string(what) + " values must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw PreconditionViolated(std::string(what) + " grid must be strictly increasing");
  }
}

std::string signal_name(const Setting& s, int k) {
  if (static_cast<int>(s.signal_labels.size()) > k && !s.signal_labels[k].empty())
    return s.signal_labels[k];
  return "s" + std::to_string(k + 1);
}

// Always-inspect LP where one payment per outcome index is shared across all
// signals; the signal payments never reach the agent and stay zero.
BaselineEntry judge_baseline(const Setting& s) {
  const int n = s.num_actions();
  const int ell = s.num_signals();
  int max_m = 0;
  for (int k = 0; k < ell; ++k) max_m = std::max(max_m, s.num_outcomes(k));

  // Marginal outcome-index distribution per action.
  std::vector<std::vector<double>> marginal(n, std::vector<double>(max_m, 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < ell; ++k)
      for (int j = 0; j < s.num_outcomes(k); ++j) marginal[i][j] += s.q0[i][k] * s.qk[k][i][j];

  BaselineEntry best;
  best.name = "judge";
  for (int target = 0; target < n; ++target) {
    LpProblem lp;
    lp.c = marginal[target];
    for (int rival = 0; rival < n; ++rival) {
      if (rival == target) continue;
      std::vector<double> row(max_m);
      for (int j = 0; j < max_m; ++j) row[j] = marginal[rival][j] - marginal[target][j];
      lp.add_ub(std::move(row), s.c[rival] - s.c[target]);
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) continue;
    double inspection = 0.0;
    for (int k = 0; k < ell; ++k) inspection += s.q0[target][k] * s.d[k];
    const double utility = expected_reward(s, target) - sol.objective - inspection;
    if (!best.feasible || utility > best.utility) {
      best.feasible = true;
      best.target = target;
      best.utility = utility;
      best.contract = zero_contract(s);
      best.contract.p.assign(ell, 1.0);
      for (int k = 0; k < ell; ++k)
        for (int j = 0; j < s.num_outcomes(k); ++j)
          best.contract.t[k][j] = std::max(0.0, sol.x[j]);
    }
  }
  return best;
}

BaselineEntry fixed_policy_baseline(const Setting& s, const std::string& name,
                                    const std::vector<double>& p) {
  BaselineEntry best;
  best.name = name;
  for (int target = 0; target < s.num_actions(); ++target) {
    const MinpayResult res = minpay_fixed_policy(s, p, target, VariantConstraints::plain());
    if (!res.feasible) continue;
    const double utility = expected_reward(s, target) - res.total_cost;
    if (!best.feasible || utility > best.utility) {
      best.feasible = true;
      best.target = target;
      best.utility = utility;
      best.contract = res.contract;
    }
  }
  return best;
}

double best_baseline_utility(const std::vector<BaselineEntry>& baselines) {
  double best = -std::numeric_limits<double>::infinity();
  for (const BaselineEntry& b : baselines)
    if (b.feasible) best = std::max(best, b.utility);
  return best;
}

SweepResult sweep_scaled(const std::string& parameter, const std::vector<double>& factors,
                         int jobs, const std::function<Setting(double)>& scaled) {
  require_grid(factors, parameter.c_str());
  SweepResult result;
  result.parameter = parameter;
  result.points.resize(factors.size());
  parallel_for(jobs, static_cast<int>(factors.size()), [&](int idx) {
    const Setting s = scaled(factors[idx]);
    SweepPoint& pt = result.points[idx];
    pt.value = factors[idx];
    const SolveReport rep = brute_force_optimal(s, kBestTarget);
    pt.feasible = rep.feasible;
    pt.adaptive_utility = rep.utility;
    pt.adaptive_cost = rep.total_cost;
    pt.policy = rep.feasible ? classify_inspection_policy(s, rep.contract.p,
                                                          /*success_ordered=*/false)
                             : "infeasible";
    const std::vector<BaselineEntry> baselines = alpaca_baselines(s);
    for (const BaselineEntry& b : baselines) pt.baselines.emplace_back(b.name, b.utility);
    const double best = best_baseline_utility(baselines);
    pt.advantage = (rep.utility - best) / std::max(std::abs(best), kMoneyTol);
  });
  return result;
}

}  // namespace

Setting alpaca_setting() {
  Setting s;
  s.action_labels = {"gpt-3.5-turbo-1106", "gpt-4o-mini-2024-07-18", "gpt-4o-2024-05-13"};
  s.signal_labels = {"len<250", "len>=250"};
  s.c = {0.00030, 0.00028, 0.00468};
  s.d = {0.3, 0.3};
  s.q0 = {{0.21, 0.79}, {0.10, 0.90}, {0.11, 0.89}};
  // Preference-vs-reference distributions conditioned on the length signal;
  // column 1 is the favorable outcome.
  s.qk = {{{0.78, 0.22}, {0.61, 0.39}, {0.54, 0.46}},
          {{0.95, 0.05}, {0.56, 0.44}, {0.45, 0.55}}};
  s.r = {{0.0, 2.0}, {0.0, 2.0}};

  // The matrix transcription is only trusted as long as it reproduces the
  // source's expected rewards.
  const double expected[3] = {0.1714, 0.8700, 1.0802};
  for (int i = 0; i < 3; ++i)
    if (std::abs(expected_reward(s, i) - expected[i]) > 1e-9)
      throw NumericalFailure("embedded chatbot instance fails its expected-reward check");
  return s;
}

std::vector<BaselineEntry> alpaca_baselines(const Setting& s) {
  const int ell = s.num_signals();

  BaselineEntry naive;
  naive.name = "naive";
  naive.feasible = true;
  naive.contract = zero_contract(s);
  naive.contract.s.assign(ell, *std::max_element(s.c.begin(), s.c.end()));
  naive.target = best_response(s, naive.contract);
  naive.utility = principal_utility(s, naive.contract);

  std::vector<BaselineEntry> out;
  out.push_back(std::move(naive));
  out.push_back(fixed_policy_baseline(s, "len", std::vector<double>(ell, 0.0)));
  out.push_back(judge_baseline(s));
  out.push_back(fixed_policy_baseline(s, "len+judge", std::vector<double>(ell, 1.0)));
  return out;
}

std::string classify_inspection_policy(const Setting& s, const std::vector<double>& p,
                                       bool success_ordered) {
  std::vector<int> inspected;
  for (int k = 0; k < s.num_signals(); ++k)
    if (p[k] > 0.5) inspected.push_back(k);
  if (inspected.empty()) return "none";
  if (success_ordered) {
    if (inspected.size() == 1 && inspected[0] == 0) return "full-failure";
    if (inspected.size() == 1 && inspected[0] == s.num_signals() - 1) return "full-success";
    return "other";
  }
  std::string joined;
  for (size_t a = 0; a < inspected.size(); ++a)
    joined += (a ? "+" : "") + signal_name(s, inspected[a]);
  return joined;
}

SweepResult sweep_reward(const Setting& s, const std::vector<double>& factors, int jobs) {
  return sweep_scaled("reward_factor", factors, jobs, [&](double f) {
    Setting scaled = s;
    for (auto& row : scaled.r)
      for (double& v : row) v *= f;
    return scaled;
  });
}

SweepResult sweep_inspection_cost(const Setting& s, const std::vector<double>& factors, int jobs) {
  return sweep_scaled("inspection_cost_factor", factors, jobs, [&](double f) {
    Setting scaled = s;
    for (double& v : scaled.d) v *= f;
    return scaled;
  });
}

std::vector<ModelProfile> swebench_profiles() {
  return {
      {"gpt-oss-120b", 0.26, 28.56},  {"gpt-5-nano", 0.348, 19.038}, {"o4-mini", 0.45, 104.99},
      {"o3", 0.584, 166.83},          {"gpt-5-mini", 0.598, 17.739}, {"gpt-5", 0.65, 140.19},
  };
}

SweepResult swebench_policy_sweep(const std::vector<ModelProfile>& profiles, int initial_tests,
                                  int refined_tests, const std::vector<double>& delta_grid,
                                  int jobs) {
  require_grid(delta_grid, "delta");
  SweepResult result;
  result.parameter = "delta";
  result.points.resize(delta_grid.size());
  parallel_for(jobs, static_cast<int>(delta_grid.size()), [&](int idx) {
    const Setting s =
        gen_binomial_setting(profiles, initial_tests, refined_tests, delta_grid[idx]);
    const SolveReport rep = solve_isop(s);
    SweepPoint& pt = result.points[idx];
    pt.value = delta_grid[idx];
    pt.feasible = rep.feasible;
    pt.adaptive_utility = rep.utility;
    pt.adaptive_cost = rep.total_cost;
    pt.policy = rep.feasible ? classify_inspection_policy(s, rep.contract.p) : "infeasible";
    pt.advantage = std::numeric_limits<double>::quiet_NaN();
  });
  return result;
}

HeatmapResult swebench_design_heatmap(const std::vector<ModelProfile>& profiles,
                                      const std::vector<int>& initial_range,
                                      const std::vector<int>& refined_range, double delta,
                                      int jobs) {
  if (initial_range.empty() || refined_range.empty())
    throw PreconditionViolated("test-count ranges must be nonempty");
  for (size_t i = 0; i < initial_range.size(); ++i) {
    if (initial_range[i] < 1) throw PreconditionViolated("initial test counts must be >= 1");
    if (i > 0 && initial_range[i] <= initial_range[i - 1])
      throw PreconditionViolated("initial range must be strictly increasing");
  }
  for (size_t i = 0; i < refined_range.size(); ++i) {
    if (refined_range[i] < 0) throw PreconditionViolated("refined test counts must be >= 0");
    if (i > 0 && refined_range[i] <= refined_range[i - 1])
      throw PreconditionViolated("refined range must be strictly increasing");
  }
  if (!(delta > 0.0)) throw PreconditionViolated("delta must be > 0");

  HeatmapResult result;
  result.initial_tests = initial_range;
  result.refined_tests = refined_range;
  const int rows = static_cast<int>(initial_range.size());
  const int cols = static_cast<int>(refined_range.size());
  result.cost.assign(rows, std::vector<double>(cols, 0.0));
  parallel_for(jobs, rows * cols, [&](int cell) {
    const int a = cell / cols;
    const int b = cell % cols;
    const Setting s =
        gen_binomial_setting(profiles, initial_range[a], refined_range[b], delta);
    result.cost[a][b] = solve_isop(s).total_cost;
  });
  return result;
}

}  // namespace adcon

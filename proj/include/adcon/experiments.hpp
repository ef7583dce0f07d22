#pragma once

#include <string>
#include <vector>

#include "adcon/generators.hpp"
#include "adcon/model.hpp"

namespace adcon {

// The embedded chatbot-delegation instance: three models, a free response-
// length signal (short / long), and a costly pairwise-preference evaluation
// per signal, with a $2 reward on preferred responses. Construction asserts
// the expected rewards (0.1714, 0.8700, 1.0802).
Setting alpaca_setting();

// One non-adaptive reference contract, maximized over target actions where
// the baseline leaves a choice.
struct BaselineEntry {
  std::string name;
  bool feasible = false;
  int target = -1;
  double utility = 0.0;
  Contract contract;
};

// The four reference policies:
//   naive      flat payment equal to the most expensive action's cost
//   len        no inspection, signal payments only
//   judge      always inspect, one payment per outcome shared across signals
//   len+judge  always inspect, unrestricted payments
std::vector<BaselineEntry> alpaca_baselines(const Setting& s);

// Names the inspection pattern of a policy. With success_ordered (signals
// sorted by success count, as in the test-count families): "none",
// "full-failure" / "full-success" for the extreme single-signal policies,
// "other" for anything else. Without it: "none", or the '+'-joined labels
// of the inspected signals.
std::string classify_inspection_policy(const Setting& s, const std::vector<double>& p,
                                       bool success_ordered = true);

struct SweepPoint {
  double value = 0.0;  // swept parameter value
  bool feasible = false;
  double adaptive_utility = 0.0;
  double adaptive_cost = 0.0;
  std::string policy;
  std::vector<std::pair<std::string, double>> baselines;  // name -> utility
  double advantage = 0.0;  // (adaptive - best baseline) / |best baseline|
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> points;
};

// Rescales every reward (resp. inspection cost) by each factor and records
// the optimal deterministic contract against the four baselines.
SweepResult sweep_reward(const Setting& s, const std::vector<double>& factors, int jobs = 1);
SweepResult sweep_inspection_cost(const Setting& s, const std::vector<double>& factors,
                                  int jobs = 1);

// The six embedded coding-benchmark model profiles, ascending success rate.
std::vector<ModelProfile> swebench_profiles();

// Optimal single-signal policy per test price delta, classified into the
// full-success / full-failure / none / other regions.
SweepResult swebench_policy_sweep(const std::vector<ModelProfile>& profiles, int initial_tests,
                                  int refined_tests, const std::vector<double>& delta_grid,
                                  int jobs = 1);

// Cheapest contract targeting the strongest model for each (initial test
// count, refined test count) cell; costs include the initial-test surcharge.
struct HeatmapResult {
  std::vector<int> initial_tests;
  std::vector<int> refined_tests;
  std::vector<std::vector<double>> cost;  // [initial index][refined index]
};

HeatmapResult swebench_design_heatmap(const std::vector<ModelProfile>& profiles,
                                      const std::vector<int>& initial_range,
                                      const std::vector<int>& refined_range, double delta,
                                      int jobs = 1);

}  // namespace adcon

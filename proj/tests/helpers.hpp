#pragma once

// Shared utilities for the test binaries: fixture loading and random
// instance construction with controllable structure.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "adcon/io.hpp"
#include "adcon/model.hpp"

#ifndef ADCON_FIXTURES_DIR
#define ADCON_FIXTURES_DIR "tests/fixtures"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(ADCON_FIXTURES_DIR "/") + name;
}

inline adcon::Setting load_fixture(const std::string& name) {
  return adcon::load_setting_file(fixture_path(name));
}

inline adcon::Setting fixture_three_actions() {
  return load_fixture("three_actions_two_signals.json");
}
inline adcon::Setting fixture_two_actions() { return load_fixture("two_actions_one_signal.json"); }

// Random row-stochastic matrix with strictly positive entries.
inline std::vector<std::vector<double>> random_stochastic(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
  for (auto& row : m) {
    double sum = 0.0;
    for (double& v : row) {
      v = u(rng);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return m;
}

// Random row-stochastic matrix whose likelihood ratios increase with the row
// index: rows are exponential-family tilts exp(theta_i * a_j) of a common
// positive base weight, with theta and a both ascending.
inline std::vector<std::vector<double>> random_mlrp_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> theta(rows), score(cols), base(cols);
  for (double& v : theta) v = 3.0 * u(rng);
  for (double& v : score) v = 2.0 * u(rng);
  for (double& v : base) v = 0.2 + u(rng);
  std::sort(theta.begin(), theta.end());
  std::sort(score.begin(), score.end());
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
  for (int i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (int j = 0; j < cols; ++j) {
      m[i][j] = base[j] * std::exp(theta[i] * score[j]);
      sum += m[i][j];
    }
    for (double& v : m[i]) v /= sum;
  }
  return m;
}

struct RandomSettingOptions {
  int actions = 3;
  int min_signals = 1;
  int max_signals = 4;
  int min_outcomes = 2;
  int max_outcomes = 3;
  double min_inspection_cost = 0.0;  // raise to force d > 0
  double max_inspection_cost = 1.0;
  double max_action_cost = 0.6;
  double max_reward = 2.0;
};

inline adcon::Setting random_setting(std::mt19937& rng, const RandomSettingOptions& opt = {}) {
  std::uniform_int_distribution<int> sig(opt.min_signals, opt.max_signals);
  std::uniform_int_distribution<int> out(opt.min_outcomes, opt.max_outcomes);
  std::uniform_real_distribution<double> cost(0.0, opt.max_action_cost);
  std::uniform_real_distribution<double> icost(opt.min_inspection_cost, opt.max_inspection_cost);
  std::uniform_real_distribution<double> reward(0.0, opt.max_reward);

  adcon::Setting s;
  const int n = opt.actions;
  const int ell = sig(rng);
  s.c.resize(n);
  for (double& v : s.c) v = cost(rng);
  s.d.resize(ell);
  for (double& v : s.d) v = icost(rng);
  s.q0 = random_stochastic(rng, n, ell);
  s.qk.resize(ell);
  s.r.resize(ell);
  for (int k = 0; k < ell; ++k) {
    const int m = out(rng);
    s.qk[k] = random_stochastic(rng, n, m);
    s.r[k].resize(m);
    for (double& v : s.r[k]) v = reward(rng);
  }
  return s;
}

// Random instance where all signals share one outcome table and both that
// table and q0 have increasing likelihood ratios; the last action is the
// most expensive, matching the specialized solver's target convention.
inline adcon::Setting random_isop_mlrp_setting(std::mt19937& rng,
                                               const RandomSettingOptions& opt = {}) {
  std::uniform_int_distribution<int> sig(std::max(1, opt.min_signals), opt.max_signals);
  std::uniform_int_distribution<int> out(opt.min_outcomes, opt.max_outcomes);
  std::uniform_real_distribution<double> cost(0.0, opt.max_action_cost);
  std::uniform_real_distribution<double> icost(opt.min_inspection_cost, opt.max_inspection_cost);
  std::uniform_real_distribution<double> reward(0.0, opt.max_reward);

  adcon::Setting s;
  const int n = opt.actions;
  const int ell = sig(rng);
  const int m = out(rng);
  s.c.resize(n);
  for (double& v : s.c) v = cost(rng);
  std::sort(s.c.begin(), s.c.end());
  s.d.resize(ell);
  for (double& v : s.d) v = icost(rng);
  s.q0 = random_mlrp_matrix(rng, n, ell);
  const auto shared = random_mlrp_matrix(rng, n, m);
  s.qk.assign(ell, shared);
  s.r.resize(ell);
  for (int k = 0; k < ell; ++k) {
    s.r[k].resize(m);
    for (double& v : s.r[k]) v = reward(rng);
  }
  return s;
}

// Random inspection policy; when deterministic, each coordinate is 0 or 1.
inline std::vector<double> random_policy(std::mt19937& rng, int ell, bool deterministic) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(ell);
  for (double& v : p) v = deterministic ? (u(rng) < 0.5 ? 0.0 : 1.0) : u(rng);
  return p;
}

// Random contract shaped for the setting with payments in [0, pay_max].
inline adcon::Contract random_contract(std::mt19937& rng, const adcon::Setting& s,
                                       double pay_max = 2.0, bool deterministic_p = false) {
  std::uniform_real_distribution<double> pay(0.0, pay_max);
  adcon::Contract ct = adcon::zero_contract(s);
  ct.p = random_policy(rng, s.num_signals(), deterministic_p);
  for (double& v : ct.s) v = pay(rng);
  for (auto& row : ct.t)
    for (double& v : row) v = pay(rng);
  return ct;
}

}  // namespace testutil

#pragma once

#include <string>
#include <vector>

namespace adcon {

// Absolute comparison tolerances used throughout.
inline constexpr double kProbTol = 1e-9;   // probabilities
inline constexpr double kMoneyTol = 1e-6;  // payments / costs / utilities

// Environment primitive: n hidden actions with costs, a free coarse signal
// per action (q0 row), and per signal a costly refined evaluation whose
// outcome distribution depends on the action (qk tables). Rewards accrue to
// the principal per (signal, outcome) pair.
struct Setting {
  std::vector<double> c;                             // action costs, size n
  std::vector<double> d;                             // inspection costs, size ell
  std::vector<std::vector<double>> q0;               // n x ell
  std::vector<std::vector<std::vector<double>>> qk;  // per signal: n x m_k
  std::vector<std::vector<double>> r;                // ragged ell x m_k rewards
  double pay_surcharge = 0.0;  // flat amount added once to reported total costs
  std::vector<std::string> action_labels;  // optional; empty or size n
  std::vector<std::string> signal_labels;  // optional; empty or size ell

  int num_actions() const { return static_cast<int>(c.size()); }
  int num_signals() const { return static_cast<int>(d.size()); }
  int num_outcomes(int k) const {
    return qk[k].empty() ? 0 : static_cast<int>(qk[k][0].size());
  }
};

// Adaptive contract: inspect signal k with probability p_k; pay s_k when
// uninspected, t_{k,j} when inspection reveals outcome j.
struct Contract {
  std::vector<double> p;
  std::vector<double> s;
  std::vector<std::vector<double>> t;  // ragged, same shape as Setting::r
};

// Returns an all-zero contract shaped for the setting.
Contract zero_contract(const Setting& s);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool mlrp_q0 = false;
  std::vector<bool> mlrp_qk;  // per signal
  bool isop = false;
  bool symmetric_isop = false;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate_setting(const Setting& s);

// Monotone likelihood ratio property in cross-multiplied form: for all
// i < i' and j < j', M[i'][j] * M[i][j'] <= M[i'][j'] * M[i][j].
bool check_mlrp(const std::vector<std::vector<double>>& m);

// True when every signal shares one outcome distribution table.
bool check_isop(const Setting& s);

// ISOP plus q0 equal to the shared table, square shape, symmetric rewards.
bool check_symmetric_isop(const Setting& s);

double expected_reward(const Setting& s, int i);                            // R_i
double expected_payment(const Setting& s, const Contract& ct, int i);       // T_i
double expected_inspection_cost(const Setting& s, const Contract& ct, int i);  // D_i

// Agent's choice: maximize T_i - c_i; ties (within kMoneyTol) go to the
// action with the larger principal utility R_i - T_i - D_i, then to the
// lowest index.
int best_response(const Setting& s, const Contract& ct);

// R - T - D at the agent's best response.
double principal_utility(const Setting& s, const Contract& ct);

}  // namespace adcon

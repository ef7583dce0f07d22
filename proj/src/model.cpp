#include "adcon/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "adcon/errors.hpp"

namespace adcon {
namespace {

bool row_is_distribution(const std::vector<double>& row, std::string* why) {
  double sum = 0.0;
  for (double v : row) {
    if (!std::isfinite(v)) {
      *why = "non-finite entry";
      return false;
    }
    if (v < -kProbTol || v > 1.0 + kProbTol) {
      *why = "entry outside [0,1]";
      return false;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTol) {
    *why = "row not stochastic";
    return false;
  }
  return true;
}

void check_indices(const Setting& s, int i) {
  if (i < 0 || i >= s.num_actions()) throw PreconditionViolated("action index out of range");
}

void check_contract_shape(const Setting& s, const Contract& ct) {
  const int ell = s.num_signals();
  if (static_cast<int>(ct.p.size()) != ell || static_cast<int>(ct.s.size()) != ell ||
      static_cast<int>(ct.t.size()) != ell)
    throw PreconditionViolated("contract dimensions do not match setting");
  for (int k = 0; k < ell; ++k)
    if (static_cast<int>(ct.t[k].size()) != s.num_outcomes(k))
      throw PreconditionViolated("contract outcome payments do not match setting");
}

}  // namespace

Contract zero_contract(const Setting& s) {
  Contract ct;
  const int ell = s.num_signals();
  ct.p.assign(ell, 0.0);
  ct.s.assign(ell, 0.0);
  ct.t.resize(ell);
  for (int k = 0; k < ell; ++k) ct.t[k].assign(s.num_outcomes(k), 0.0);
  return ct;
}

ValidationReport validate_setting(const Setting& s) {
  ValidationReport rep;
  auto err = [&rep](const std::string& m) { rep.errors.push_back(m); };
  auto warn = [&rep](const std::string& m) { rep.warnings.push_back(m); };

  const int n = s.num_actions();
  const int ell = s.num_signals();
  if (n == 0) err("no actions");
  if (ell == 0) err("no signals");
  for (double v : s.c)
    if (!std::isfinite(v)) err("non-finite action cost");
  for (double v : s.d) {
    if (!std::isfinite(v)) err("non-finite inspection cost");
    else if (v < 0) err("negative inspection cost");
  }
  if (!std::isfinite(s.pay_surcharge) || s.pay_surcharge < 0)
    err("pay_surcharge must be finite and nonnegative");

  if (static_cast<int>(s.q0.size()) != n) err("q0 must have one row per action");
  std::string why;
  for (size_t i = 0; i < s.q0.size(); ++i) {
    if (static_cast<int>(s.q0[i].size()) != ell) {
      err("q0 row " + std::to_string(i + 1) + " has wrong length");
      continue;
    }
    if (!row_is_distribution(s.q0[i], &why))
      err("q0 row " + std::to_string(i + 1) + ": " + why);
  }

  if (static_cast<int>(s.qk.size()) != ell) err("qk must have one table per signal");
  for (size_t k = 0; k < s.qk.size(); ++k) {
    const auto& table = s.qk[k];
    if (static_cast<int>(table.size()) != n) {
      err("qk table " + std::to_string(k + 1) + " must have one row per action");
      continue;
    }
    const size_t m = table.empty() ? 0 : table[0].size();
    if (m == 0) err("qk table " + std::to_string(k + 1) + " has no outcomes");
    for (size_t i = 0; i < table.size(); ++i) {
      if (table[i].size() != m) {
        err("qk table " + std::to_string(k + 1) + " is ragged across actions");
        continue;
      }
      if (!row_is_distribution(table[i], &why))
        err("qk table " + std::to_string(k + 1) + " row " + std::to_string(i + 1) + ": " + why);
    }
  }

  if (static_cast<int>(s.r.size()) != ell) err("rewards must have one row per signal");
  for (size_t k = 0; k < s.r.size() && k < s.qk.size(); ++k) {
    if (static_cast<int>(s.qk.size()) > static_cast<int>(k) &&
        static_cast<int>(s.r[k].size()) != s.num_outcomes(static_cast<int>(k)))
      err("rewards row " + std::to_string(k + 1) + " length differs from outcome count");
    for (double v : s.r[k])
      if (!std::isfinite(v)) err("non-finite reward");
  }

  if (!s.action_labels.empty() && static_cast<int>(s.action_labels.size()) != n)
    err("action_labels size mismatch");
  if (!s.signal_labels.empty() && static_cast<int>(s.signal_labels.size()) != ell)
    err("signal_labels size mismatch");

  if (!rep.ok()) return rep;

  for (int i = 0; i + 1 < n; ++i)
    if (s.c[i] > s.c[i + 1] + kMoneyTol) {
      warn("action costs are not nondecreasing");
      break;
    }
  rep.mlrp_q0 = check_mlrp(s.q0);
  if (!rep.mlrp_q0) warn("q0 fails MLRP");
  rep.mlrp_qk.resize(ell);
  for (int k = 0; k < ell; ++k) {
    rep.mlrp_qk[k] = check_mlrp(s.qk[k]);
    if (!rep.mlrp_qk[k]) warn("qk table " + std::to_string(k + 1) + " fails MLRP");
  }
  rep.isop = check_isop(s);
  if (!rep.isop) warn("outcome distributions differ across signals (ISOP fails)");
  rep.symmetric_isop = check_symmetric_isop(s);
  return rep;
}

bool check_mlrp(const std::vector<std::vector<double>>& m) {
  const size_t rows = m.size();
  for (size_t hi = 1; hi < rows; ++hi) {
    for (size_t lo = 0; lo < hi; ++lo) {
      const auto& a = m[lo];
      const auto& b = m[hi];
      const size_t cols = a.size();
      for (size_t j2 = 1; j2 < cols; ++j2)
        for (size_t j1 = 0; j1 < j2; ++j1)
          if (b[j1] * a[j2] > b[j2] * a[j1] + 1e-12) return false;
    }
  }
  return true;
}

bool check_isop(const Setting& s) {
  const int ell = s.num_signals();
  for (int k = 1; k < ell; ++k) {
    if (s.num_outcomes(k) != s.num_outcomes(0)) return false;
    for (int i = 0; i < s.num_actions(); ++i)
      for (int j = 0; j < s.num_outcomes(0); ++j)
        if (std::abs(s.qk[k][i][j] - s.qk[0][i][j]) > kProbTol) return false;
  }
  return true;
}

bool check_symmetric_isop(const Setting& s) {
  if (!check_isop(s)) return false;
  const int ell = s.num_signals();
  if (s.num_outcomes(0) != ell) return false;
  for (int i = 0; i < s.num_actions(); ++i)
    for (int k = 0; k < ell; ++k)
      if (std::abs(s.q0[i][k] - s.qk[0][i][k]) > kProbTol) return false;
  for (int k = 0; k < ell; ++k)
    for (int j = 0; j < ell; ++j)
      if (std::abs(s.r[k][j] - s.r[j][k]) > kMoneyTol) return false;
  return true;
}

double expected_reward(const Setting& s, int i) {
  check_indices(s, i);
  double total = 0.0;
  for (int k = 0; k < s.num_signals(); ++k) {
    double inner = 0.0;
    for (int j = 0; j < s.num_outcomes(k); ++j) inner += s.qk[k][i][j] * s.r[k][j];
    total += s.q0[i][k] * inner;
  }
  return total;
}

double expected_payment(const Setting& s, const Contract& ct, int i) {
  check_indices(s, i);
  check_contract_shape(s, ct);
  double total = 0.0;
  for (int k = 0; k < s.num_signals(); ++k) {
    double inner = 0.0;
    for (int j = 0; j < s.num_outcomes(k); ++j) inner += s.qk[k][i][j] * ct.t[k][j];
    total += s.q0[i][k] * ((1.0 - ct.p[k]) * ct.s[k] + ct.p[k] * inner);
  }
  return total;
}

double expected_inspection_cost(const Setting& s, const Contract& ct, int i) {
  check_indices(s, i);
  check_contract_shape(s, ct);
  double total = 0.0;
  for (int k = 0; k < s.num_signals(); ++k) total += s.q0[i][k] * ct.p[k] * s.d[k];
  return total;
}

int best_response(const Setting& s, const Contract& ct) {
  const int n = s.num_actions();
  std::vector<double> agent(n);
  double best_agent = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    agent[i] = expected_payment(s, ct, i) - s.c[i];
    best_agent = std::max(best_agent, agent[i]);
  }
  int pick = -1;
  double pick_principal = 0.0;
  for (int i = 0; i < n; ++i) {
    if (agent[i] < best_agent - kMoneyTol) continue;
    const double principal = expected_reward(s, i) - expected_payment(s, ct, i) -
                             expected_inspection_cost(s, ct, i);
    if (pick < 0 || principal > pick_principal + kMoneyTol) {
      pick = i;
      pick_principal = principal;
    }
  }
  return pick;
}

double principal_utility(const Setting& s, const Contract& ct) {
  const int i = best_response(s, ct);
  return expected_reward(s, i) - expected_payment(s, ct, i) -
         expected_inspection_cost(s, ct, i);
}

}  // namespace adcon

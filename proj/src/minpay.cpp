#include "adcon/minpay.hpp"

#include <cmath>
#include <stdexcept>

#include "adcon/errors.hpp"
#include "adcon/lp.hpp"

namespace adcon {
namespace {

bool is_zero_prob(double p) { return p <= kProbTol; }
bool is_one_prob(double p) { return p >= 1.0 - 1e-9; }

void check_policy(const Setting& s, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != s.num_signals())
    throw PreconditionViolated("policy length does not match signal count");
  for (double v : p)
    if (!(v >= -kProbTol && v <= 1.0 + kProbTol))
      throw PreconditionViolated("inspection probability outside [0,1]");
}

}  // namespace

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::CoNI: return "coni";
    case Variant::UMI: return "umi";
    case Variant::UNI: return "uni";
  }
  return "?";
}

std::vector<SignalSupport> VariantConstraints::classify_support(const std::vector<double>& p) {
  std::vector<SignalSupport> out(p.size());
  for (size_t k = 0; k < p.size(); ++k)
    out[k] = is_zero_prob(p[k])  ? SignalSupport::ForcedZero
             : is_one_prob(p[k]) ? SignalSupport::ForcedOne
                                 : SignalSupport::Interior;
  return out;
}

namespace detail {

MinpayLp minpay_build_lp(const Setting& s, const std::vector<double>& p, int target,
                         const VariantConstraints& vc) {
  check_policy(s, p);
  const int n = s.num_actions();
  const int ell = s.num_signals();
  if (target < 0 || target >= n) throw PreconditionViolated("target action out of range");

  const bool averaged = vc.tag == Variant::UMI || vc.tag == Variant::UNI;
  if (averaged) {
    if (static_cast<int>(vc.support.size()) != ell)
      throw PreconditionViolated("support classification length mismatch");
    for (int k = 0; k < ell; ++k) {
      const SignalSupport sup = vc.support[k];
      if ((sup == SignalSupport::ForcedZero) != is_zero_prob(p[k]) ||
          (sup == SignalSupport::ForcedOne) != is_one_prob(p[k]))
        throw PreconditionViolated("support classification inconsistent with policy");
    }
  }

  MinpayLp out;
  out.s_col.assign(ell, -1);
  out.t_col.resize(ell);
  for (int k = 0; k < ell; ++k) out.t_col[k].assign(s.num_outcomes(k), -1);

  // subst[k]: s_k is eliminated through the indifference equality
  // s_k = d_k + E_j[t_{k,j}]. Valid for every inspected UMI signal (s_k has
  // no other role there, so the one-sided no-deviation conditions collapse
  // to the equality for free). Under UNI the payment cap t <= s also binds
  // s_k, so a certainty-inspected signal keeps its variables and gets the
  // one-sided s_k >= d_k + E_j[t_{k,j}] as an explicit row instead.
  std::vector<char> subst(ell, 0);
  if (averaged)
    for (int k = 0; k < ell; ++k)
      subst[k] = vc.support[k] != SignalSupport::ForcedZero &&
                 !(vc.tag == Variant::UNI && vc.support[k] == SignalSupport::ForcedOne);

  // Column layout. kind[c]: true = signal payment, false = outcome payment.
  struct Key {
    bool is_signal;
    int k, j;
  };
  std::vector<Key> keys;
  std::vector<double> obj;
  auto add_signal = [&](int k, double coef) {
    out.s_col[k] = static_cast<int>(keys.size());
    keys.push_back({true, k, 0});
    obj.push_back(coef);
  };
  auto add_outcome = [&](int k, int j, double coef) {
    out.t_col[k][j] = static_cast<int>(keys.size());
    keys.push_back({false, k, j});
    obj.push_back(coef);
  };

  for (int k = 0; k < ell; ++k) {
    if (averaged && vc.support[k] == SignalSupport::ForcedZero) {
      // Never inspected: s_k is the only live payment. Its outcome payments
      // are payoff-irrelevant and exported equal to s_k, which satisfies
      // both the cap and the no-deviation condition.
      if (s.q0[target][k] > 0) add_signal(k, s.q0[target][k]);
      continue;
    }
    if (subst[k]) {
      // s_k substituted away; the d_k part of the equality plus the
      // inspection cost together contribute q0 * d_k to the total.
      out.obj_const += s.q0[target][k] * s.d[k];
      for (int j = 0; j < s.num_outcomes(k); ++j) {
        const double reach = s.q0[target][k] * s.qk[k][target][j];
        if (reach > 0) add_outcome(k, j, reach);
      }
      continue;
    }
    // Ordinary variables: payments the target can reach with positive
    // probability; the rest are fixed to zero, which is exact: a zero-reach
    // payment has zero objective weight and can only hurt incentive
    // compatibility.
    bool any_outcome = false;
    for (int j = 0; j < s.num_outcomes(k); ++j) {
      const double reach = s.q0[target][k] * p[k] * s.qk[k][target][j];
      if (reach > 0) {
        add_outcome(k, j, reach);
        any_outcome = true;
      }
    }
    const double sig_reach = s.q0[target][k] * (1.0 - p[k]);
    // When the signal payment caps its outcome payments it stays a variable
    // even if the target never leaves the signal uninspected.
    const bool capped = vc.tag == Variant::CoNI || vc.tag == Variant::UNI;
    if (sig_reach > 0 || (capped && any_outcome)) add_signal(k, sig_reach);
    // Keep the averaged objective equal to T + D across regimes.
    if (averaged) out.obj_const += s.q0[target][k] * p[k] * s.d[k];
  }

  const int ncols = static_cast<int>(keys.size());
  out.lp.c = obj;

  // Incentive compatibility, one row per rival:
  //   T_rival - T_target <= c_rival - c_target.
  for (int rival = 0; rival < n; ++rival) {
    if (rival == target) continue;
    std::vector<double> row(ncols, 0.0);
    double rhs = s.c[rival] - s.c[target];
    for (int c = 0; c < ncols; ++c) {
      const Key& key = keys[c];
      const int k = key.k;
      if (subst[k]) {
        // s_k = d_k + E_j[t] folded in: the uninspected branch of either
        // action pays the target-conditional average of t instead of s_k.
        row[c] = s.q0[rival][k] *
                     ((1.0 - p[k]) * s.qk[k][target][key.j] + p[k] * s.qk[k][rival][key.j]) -
                 s.q0[target][k] * s.qk[k][target][key.j];
      } else if (key.is_signal) {
        row[c] = (s.q0[rival][k] - s.q0[target][k]) * (1.0 - p[k]);
      } else {
        row[c] = (s.q0[rival][k] * s.qk[k][rival][key.j] -
                  s.q0[target][k] * s.qk[k][target][key.j]) *
                 p[k];
      }
    }
    // The d_k part of a substituted s_k moves to the right-hand side.
    for (int k = 0; k < ell; ++k)
      if (subst[k]) rhs += (s.q0[target][k] - s.q0[rival][k]) * (1.0 - p[k]) * s.d[k];
    out.ic_rival.push_back(rival);
    out.lp.add_ub(std::move(row), rhs);
  }

  if (vc.tag == Variant::CoNI || vc.tag == Variant::UNI) {
    // Payment cap for every live outcome payment.
    for (int c = 0; c < ncols; ++c) {
      if (keys[c].is_signal) continue;
      const int k = keys[c].k;
      std::vector<double> row(ncols, 0.0);
      if (subst[k]) {
        // t <= s with s substituted: t_{k,j} - E_j'[t_{k,j'}] <= d_k.
        row[c] += 1.0;
        for (int c2 = 0; c2 < ncols; ++c2)
          if (!keys[c2].is_signal && keys[c2].k == k) row[c2] -= s.qk[k][target][keys[c2].j];
        out.lp.add_ub(std::move(row), s.d[k]);
      } else {
        // t_{k,j} <= s_k directly.
        row[c] = 1.0;
        row[out.s_col[k]] = -1.0;
        out.lp.add_ub(std::move(row), 0.0);
      }
    }
  }
  if (vc.tag == Variant::UNI) {
    // One-sided no-deviation rows for certainty-inspected signals:
    // d_k + E_j[t_{k,j}] <= s_k.
    for (int k = 0; k < ell; ++k) {
      if (vc.support[k] != SignalSupport::ForcedOne || out.s_col[k] < 0) continue;
      std::vector<double> row(ncols, 0.0);
      row[out.s_col[k]] = -1.0;
      for (int j = 0; j < s.num_outcomes(k); ++j)
        if (out.t_col[k][j] >= 0) row[out.t_col[k][j]] = s.qk[k][target][j];
      out.lp.add_ub(std::move(row), -s.d[k]);
    }
  }
  return out;
}

}  // namespace detail

MinpayResult minpay_fixed_policy(const Setting& s, const std::vector<double>& p, int target,
                                 const VariantConstraints& vc) {
  detail::MinpayLp built = detail::minpay_build_lp(s, p, target, vc);
  const int ell = s.num_signals();
  const bool averaged = vc.tag == Variant::UMI || vc.tag == Variant::UNI;

  LpSolution sol = solve_lp(built.lp);
  MinpayResult out;
  if (sol.status == LpStatus::Infeasible) return out;
  if (sol.status == LpStatus::Unbounded) {
    // Cannot happen (nonnegative objective over the nonnegative orthant);
    // kept as a belt-and-suspenders cap bounding every payment by worst-case
    // money divided by its reach.
    double money = 1.0;
    for (int i = 0; i < s.num_actions(); ++i)
      money = std::max(money, std::abs(expected_reward(s, i)) + 1.0);
    for (double v : s.c) money += std::abs(v);
    for (double v : s.d) money += v;
    const int ncols = built.lp.num_vars();
    for (int c = 0; c < ncols; ++c) {
      std::vector<double> row(ncols, 0.0);
      row[c] = 1.0;
      built.lp.add_ub(std::move(row), built.lp.c[c] > kProbTol ? money / built.lp.c[c] : money * 1e9);
    }
    sol = solve_lp(built.lp);
    if (sol.status != LpStatus::Optimal) return out;
  }

  // Assemble the contract; tiny negative simplex dust is clipped to zero.
  Contract ct = zero_contract(s);
  ct.p = p;
  auto value = [&sol](int col) { return col >= 0 ? std::max(0.0, sol.x[col]) : 0.0; };
  for (int k = 0; k < ell; ++k) {
    if (!averaged) {
      ct.s[k] = value(built.s_col[k]);
      for (int j = 0; j < s.num_outcomes(k); ++j) ct.t[k][j] = value(built.t_col[k][j]);
    } else if (vc.support[k] == SignalSupport::ForcedZero) {
      ct.s[k] = value(built.s_col[k]);
      for (int j = 0; j < s.num_outcomes(k); ++j) ct.t[k][j] = ct.s[k];
    } else if (vc.tag == Variant::UNI && vc.support[k] == SignalSupport::ForcedOne) {
      // Not substituted: the no-deviation row kept s_k honest in the LP.
      // With no live variables (the target never reaches the signal) the
      // cheapest compliant payments are t = 0, s = d_k.
      for (int j = 0; j < s.num_outcomes(k); ++j) ct.t[k][j] = value(built.t_col[k][j]);
      ct.s[k] = built.s_col[k] >= 0 ? value(built.s_col[k]) : s.d[k];
    } else {
      double avg = 0.0;
      for (int j = 0; j < s.num_outcomes(k); ++j) {
        ct.t[k][j] = value(built.t_col[k][j]);
        avg += s.qk[k][target][j] * ct.t[k][j];
      }
      ct.s[k] = s.d[k] + avg;
    }
  }

  out.feasible = true;
  out.contract = std::move(ct);
  out.expected_pay = expected_payment(s, out.contract, target);
  out.total_cost = out.expected_pay + expected_inspection_cost(s, out.contract, target);
  return out;
}

double minpay_total_cost(const Setting& s, const std::vector<double>& p, int target,
                         const VariantConstraints& vc) {
  return minpay_fixed_policy(s, p, target, vc).total_cost;
}

}  // namespace adcon

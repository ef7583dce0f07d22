#pragma once

#include <limits>
#include <string>
#include <vector>

#include "adcon/lp.hpp"
#include "adcon/model.hpp"

namespace adcon {

// Payment regimes for a fixed inspection policy.
//   Plain: limited liability + incentive compatibility only.
//   CoNI:  outcome payments may not exceed the signal payment (t <= s).
//   UMI:   the principal must not gain by deviating from the announced
//          inspection policy. Under the target's conditional distribution,
//          inspected signals carry s_k = d_k + E_j[t_{k,j}] (collapsing the
//          one-sided conditions to an equality loses nothing here because
//          s_k appears in no other constraint), and never-inspected signals
//          carry s_k <= d_k + E_j[t_{k,j}].
//   UNI:   UMI's no-deviation conditions plus the CoNI cap. The cap couples
//          s_k to the outcome payments, so a signal inspected with certainty
//          keeps s_k as a variable with the one-sided
//          s_k >= d_k + E_j[t_{k,j}] instead of the equality.
enum class Variant { Plain, CoNI, UMI, UNI };

std::string variant_name(Variant v);

enum class SignalSupport { ForcedZero, Interior, ForcedOne };

struct VariantConstraints {
  Variant tag = Variant::Plain;
  // Per-signal classification; required for UMI/UNI, ignored otherwise.
  std::vector<SignalSupport> support;

  static VariantConstraints plain() { return {Variant::Plain, {}}; }
  static VariantConstraints coni() { return {Variant::CoNI, {}}; }
  static VariantConstraints umi(const std::vector<double>& p) {
    return {Variant::UMI, classify_support(p)};
  }
  static VariantConstraints uni(const std::vector<double>& p) {
    return {Variant::UNI, classify_support(p)};
  }
  static std::vector<SignalSupport> classify_support(const std::vector<double>& p);
};

struct MinpayResult {
  bool feasible = false;
  Contract contract;
  double expected_pay = 0.0;  // T at the target
  double total_cost = std::numeric_limits<double>::infinity();  // T + D, no surcharge
};

// Cheapest payments (s, t) incentivizing the target action under policy p
// and the given variant constraints. Variables the target can never reach
// are fixed to zero (exact: they can only hurt incentive compatibility).
MinpayResult minpay_fixed_policy(const Setting& s, const std::vector<double>& p, int target,
                                 const VariantConstraints& vc);

// T + D of the optimum, +inf when the target cannot be incentivized.
double minpay_total_cost(const Setting& s, const std::vector<double>& p, int target,
                         const VariantConstraints& vc);

namespace detail {
// The assembled MIN-PAY LP with its column and row maps; used internally and
// by dual diagnostics. Columns fixed to zero by the reach clamp map to -1.
struct MinpayLp {
  LpProblem lp;
  std::vector<int> s_col;               // per signal
  std::vector<std::vector<int>> t_col;  // per (signal, outcome)
  std::vector<int> ic_rival;            // rival action per leading inequality row
  double obj_const = 0.0;               // constant part of the objective
};
MinpayLp minpay_build_lp(const Setting& s, const std::vector<double>& p, int target,
                         const VariantConstraints& vc);
}  // namespace detail

}  // namespace adcon

#pragma once

#include <vector>

#include "adcon/minpay.hpp"
#include "adcon/model.hpp"
#include "adcon/report.hpp"

namespace adcon {

// Globally optimal deterministic-inspection contract by enumerating all 2^ell
// inspection sets (guard: ell <= 20). target may be kBestTarget.
SolveReport brute_force_optimal(const Setting& s, int target);

// Same optimum, enumerating only inspection sets of size <= n-1, which is
// sufficient when every action's cost is constant over the enumerated set
// choice; polynomial for fixed n.
SolveReport solve_constant_actions(const Setting& s, int target);

// Optimal deterministic contract over single-signal inspection policies for
// MLRP + ISOP settings, targeting the last action; each policy needs only a
// two-variable LP on the payment support the dual analysis allows.
SolveReport solve_isop(const Setting& s);

// Stops inspecting signals whose outcome payments are all zero, preserving
// every action's expected payment and weakly reducing inspection cost.
Contract prune_unpaid_inspections(const Setting& s, const Contract& ct);

// Verifies on a deterministic policy that the MIN-PAY LP's binding dual
// constraints are confined to the two atoms the ISOP analysis predicts: the
// max-index uninspected signal with positive target mass and the max-index
// positive-mass outcome of the max-index inspected signal.
bool isop_dual_check(const Setting& s, const std::vector<double>& p);

}  // namespace adcon

#pragma once

#include <limits>
#include <vector>

#include "adcon/minpay.hpp"
#include "adcon/model.hpp"
#include "adcon/report.hpp"

namespace adcon {

// Supremum of the committed-inspection program where the principal bears
// inspection costs: equals the always-inspect optimum of the zero-cost
// relaxation; attained exactly when that optimum never needs to inspect a
// signal the target reaches at positive cost.
struct ComiReport {
  bool feasible = false;
  bool best_mode = false;
  int target = -1;
  double total_cost_sup = std::numeric_limits<double>::infinity();  // incl. surcharge
  double utility_sup = -std::numeric_limits<double>::infinity();
  bool attained = false;
  Contract witness;  // always-inspect payments of the zero-cost relaxation
};

ComiReport comi_supremum(const Setting& s, int target);

// Rescales one signal's inspection probability downward while keeping every
// action's expected payment unchanged: s'_k = s_k (1-p_k)/(1-p'), t'_{k,j} =
// t_{k,j} p_k / p'. Requires 0 < p_new < p_k.
Contract comi_scale_down(const Contract& ct, int k, double p_new);

// Turns a deterministic contract into one meeting the uncommitted-inspection
// constraints: never-inspected signals broadcast s into t; always-inspected
// signals get s = d + max_j t. Expected payments are unchanged for every
// action. The action argument names the incentivized target (shape checks
// only; the construction does not depend on it).
Contract det_to_uni(const Setting& s, const Contract& ct, int i);

// Simulates any contract by always inspecting: t' = (1-p) s + p t. Agent
// payoffs are identical action by action; inspection cost rises by
// sum_k q0[i][k] (1-p_k) d_k.
Contract to_always_inspect(const Setting& s, const Contract& ct);

struct GridConfig {
  double initial_step = 0.05;
  int refine_rounds = 3;
  double refine_factor = 10.0;
};

// Best contract found for the variant over real-valued inspection policies:
// exhaustive support enumeration (UMI/UNI) and per-coordinate product grids
// with nested refinement around the incumbent. Guard: ell <= 6.
SolveReport search_randomized(const Setting& s, int target, Variant variant,
                              const GridConfig& grid = {});

}  // namespace adcon

#pragma once

#include <vector>

#include "adcon/model.hpp"

namespace adcon {

// Flattening of the two-stage experiment under inspection policy p into a
// single distribution over atoms. Atom order is fixed: the ell signal atoms
// first (signal observed, not inspected), then outcome atoms grouped by
// signal in (k, j) lexicographic order.
struct CombinedDistribution {
  int ell = 0;
  std::vector<int> m;               // outcomes per signal
  std::vector<int> outcome_base;    // first outcome-atom index per signal
  std::vector<std::vector<double>> f;  // n x num_atoms, rows sum to 1

  int num_atoms() const { return f.empty() ? 0 : static_cast<int>(f[0].size()); }
  int signal_atom(int k) const { return k; }
  int outcome_atom(int k, int j) const { return outcome_base[k] + j; }
};

CombinedDistribution combined_distribution(const Setting& s, const std::vector<double>& p);

// Payment vector over the same atom order: s on signal atoms, t on outcome
// atoms; f_i . v equals the expected payment T_i for every action.
std::vector<double> combined_payments(const Setting& s, const Contract& ct);

}  // namespace adcon

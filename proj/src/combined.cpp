#include "adcon/combined.hpp"

#include <stdexcept>

#include "adcon/errors.hpp"

namespace adcon {

CombinedDistribution combined_distribution(const Setting& s, const std::vector<double>& p) {
  const int n = s.num_actions();
  const int ell = s.num_signals();
  if (static_cast<int>(p.size()) != ell)
    throw PreconditionViolated("policy length does not match signal count");
  for (double v : p)
    if (!(v >= -kProbTol && v <= 1.0 + kProbTol))
      throw PreconditionViolated("inspection probability outside [0,1]");

  CombinedDistribution cd;
  cd.ell = ell;
  cd.m.resize(ell);
  cd.outcome_base.resize(ell);
  int atoms = ell;
  for (int k = 0; k < ell; ++k) {
    cd.m[k] = s.num_outcomes(k);
    cd.outcome_base[k] = atoms;
    atoms += cd.m[k];
  }
  cd.f.assign(n, std::vector<double>(atoms, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < ell; ++k) {
      const double mass = s.q0[i][k];
      cd.f[i][k] = mass * (1.0 - p[k]);
      for (int j = 0; j < cd.m[k]; ++j)
        cd.f[i][cd.outcome_base[k] + j] = mass * p[k] * s.qk[k][i][j];
    }
  }
  return cd;
}

std::vector<double> combined_payments(const Setting& s, const Contract& ct) {
  const int ell = s.num_signals();
  if (static_cast<int>(ct.s.size()) != ell || static_cast<int>(ct.t.size()) != ell)
    throw PreconditionViolated("contract does not match setting");
  std::vector<double> v;
  for (int k = 0; k < ell; ++k) v.push_back(ct.s[k]);
  for (int k = 0; k < ell; ++k) {
    if (static_cast<int>(ct.t[k].size()) != s.num_outcomes(k))
      throw PreconditionViolated("contract outcome payments do not match setting");
    for (double t : ct.t[k]) v.push_back(t);
  }
  return v;
}

}  // namespace adcon

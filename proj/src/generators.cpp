#include "adcon/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "adcon/errors.hpp"

namespace adcon {

namespace {

// Binomial(trials, p) mass at k via log-gamma, safe for p in {0, 1}.
double binom_pmf(int trials, double p, int k) {
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == trials ? 1.0 : 0.0;
  const double log_choose =
      std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (trials - k) * std::log1p(-p));
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_binom_pmf(int trials, double a, double b, int k) {
  const double log_choose =
      std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0);
  return std::exp(log_choose + log_beta(k + a, trials - k + b) - log_beta(a, b));
}

std::vector<double> normalized(std::vector<double> row) {
  double sum = 0.0;
  for (double v : row) sum += v;
  if (!(sum > 0.0)) throw NumericalFailure("probability row sums to zero");
  for (double& v : row) v /= sum;
  return row;
}

std::vector<ModelProfile> sorted_profiles(std::vector<ModelProfile> profiles) {
  if (profiles.empty()) throw PreconditionViolated("profiles must be nonempty");
  for (const ModelProfile& m : profiles) {
    if (!(m.mu >= 0.0 && m.mu <= 1.0))
      throw PreconditionViolated("success rate must lie in [0, 1]");
    if (!(m.cost >= 0.0)) throw PreconditionViolated("model cost must be nonnegative");
  }
  std::stable_sort(profiles.begin(), profiles.end(),
                   [](const ModelProfile& a, const ModelProfile& b) {
                     if (a.mu != b.mu) return a.mu < b.mu;
                     return a.cost < b.cost;
                   });
  return profiles;
}

// Shared scaffolding for the benchmark families: costs, inspection prices,
// labels, and success-count rewards; callers fill the probability tables.
Setting test_suite_skeleton(const std::vector<ModelProfile>& profiles, int initial_tests,
                            int refined_tests, double delta, double reward_scale) {
  if (initial_tests < 1) throw PreconditionViolated("initial_tests must be >= 1");
  if (refined_tests < 0) throw PreconditionViolated("refined_tests must be >= 0");
  if (!(delta >= 0.0)) throw PreconditionViolated("delta must be nonnegative");
  const int n = static_cast<int>(profiles.size());
  const int ell = initial_tests + 1;
  const int m = refined_tests + 1;

  Setting s;
  s.c.reserve(n);
  s.action_labels.reserve(n);
  for (const ModelProfile& mp : profiles) {
    s.c.push_back(mp.cost);
    s.action_labels.push_back(mp.label);
  }
  s.d.assign(ell, delta * refined_tests);
  s.pay_surcharge = delta * initial_tests;
  s.q0.assign(n, std::vector<double>(ell, 0.0));
  s.qk.assign(ell, std::vector<std::vector<double>>(n, std::vector<double>(m, 0.0)));
  s.r.resize(ell);
  s.signal_labels.resize(ell);
  for (int k = 0; k < ell; ++k) {
    s.r[k].assign(m, reward_scale * k);
    s.signal_labels[k] = "pass" + std::to_string(k);
  }
  return s;
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  Graph g;
  std::set<std::pair<int, int>> seen;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    int u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra))
      throw PreconditionViolated("edge list line " + std::to_string(line_no) +
                                 ": expected exactly two vertex indices");
    if (u < 0 || v < 0)
      throw PreconditionViolated("edge list line " + std::to_string(line_no) +
                                 ": negative vertex index");
    if (u == v)
      throw PreconditionViolated("edge list line " + std::to_string(line_no) + ": self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw PreconditionViolated("edge list line " + std::to_string(line_no) + ": duplicate edge");
    g.edges.emplace_back(u, v);
    g.num_vertices = std::max(g.num_vertices, std::max(u, v) + 1);
  }
  return g;
}

Setting gen_independent_set_instance(const Graph& g, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionViolated("eps must lie in (0, 1)");
  const int nv = g.num_vertices;
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= nv || v >= nv)
      throw PreconditionViolated("edge endpoint out of range");
    if (u == v) throw PreconditionViolated("self-loop");
  }
  const int n = static_cast<int>(g.edges.size()) + 1;  // edges then target
  const int ell = nv + 1;                              // vertices then dummy
  const int target = n - 1;
  const int dummy = ell - 1;
  const double unit = nv + 1.0;

  Setting s;
  s.c.assign(n, 0.0);
  s.c[target] = eps / unit;
  s.d.assign(ell, unit);
  s.d[dummy] = unit * unit;
  s.q0.assign(n, std::vector<double>(ell, 1.0 / unit));
  // Binary outcomes: index 0 flags an incident edge action, index 1 is the
  // clean result the target always produces.
  s.qk.assign(ell, std::vector<std::vector<double>>(n, {0.0, 1.0}));
  for (int e = 0; e < n - 1; ++e) {
    const auto& [u, v] = g.edges[e];
    s.qk[u][e] = {1.0, 0.0};
    s.qk[v][e] = {1.0, 0.0};
    s.qk[dummy][e] = {1.0, 0.0};
  }
  s.r.assign(ell, {0.0, 0.0});
  s.r[dummy][1] = (nv + eps) * unit;
  s.action_labels.reserve(n);
  for (const auto& [u, v] : g.edges)
    s.action_labels.push_back("edge_" + std::to_string(u) + "_" + std::to_string(v));
  s.action_labels.push_back("target");
  s.signal_labels.reserve(ell);
  for (int v = 0; v < nv; ++v) s.signal_labels.push_back("v" + std::to_string(v));
  s.signal_labels.push_back("dummy");
  return s;
}

Setting gen_binomial_setting(const std::vector<ModelProfile>& profiles, int initial_tests,
                             int refined_tests, double delta, double reward_scale) {
  const std::vector<ModelProfile> sorted = sorted_profiles(profiles);
  Setting s = test_suite_skeleton(sorted, initial_tests, refined_tests, delta, reward_scale);
  const int n = s.num_actions();
  const int ell = s.num_signals();
  for (int i = 0; i < n; ++i) {
    const double mu = sorted[i].mu;
    for (int k = 0; k < ell; ++k) s.q0[i][k] = binom_pmf(initial_tests, mu, k);
    s.q0[i] = normalized(s.q0[i]);
    std::vector<double> outcome_row(refined_tests + 1);
    for (int j = 0; j <= refined_tests; ++j) outcome_row[j] = binom_pmf(refined_tests, mu, j);
    outcome_row = normalized(outcome_row);
    for (int k = 0; k < ell; ++k) s.qk[k][i] = outcome_row;
  }
  return s;
}

Setting gen_beta_binomial_setting(const std::vector<ModelProfile>& profiles, int initial_tests,
                                  int refined_tests, double delta, double rho,
                                  double reward_scale) {
  if (!(rho > 0.0 && rho < 1.0)) throw PreconditionViolated("rho must lie in (0, 1)");
  const std::vector<ModelProfile> sorted = sorted_profiles(profiles);
  for (const ModelProfile& m : sorted)
    if (!(m.mu > 0.0 && m.mu < 1.0))
      throw PreconditionViolated("beta-binomial needs success rates strictly inside (0, 1)");
  Setting s = test_suite_skeleton(sorted, initial_tests, refined_tests, delta, reward_scale);
  const int n = s.num_actions();
  const int ell = s.num_signals();
  const double prior_weight = (1.0 - rho) / rho;
  for (int i = 0; i < n; ++i) {
    const double a = prior_weight * sorted[i].mu;
    const double b = prior_weight * (1.0 - sorted[i].mu);
    for (int k = 0; k < ell; ++k) s.q0[i][k] = beta_binom_pmf(initial_tests, a, b, k);
    s.q0[i] = normalized(s.q0[i]);
    for (int k = 0; k < ell; ++k) {
      // Observing k successes in the initial suite updates the Beta prior to
      // (a + k, b + initial - k) before the refined trials are drawn.
      std::vector<double> row(refined_tests + 1);
      for (int j = 0; j <= refined_tests; ++j)
        row[j] = beta_binom_pmf(refined_tests, a + k, b + (initial_tests - k), j);
      s.qk[k][i] = normalized(row);
    }
  }
  return s;
}

Setting perturb_dirichlet(const Setting& s, double alpha, std::uint64_t seed, bool smooth_zeros) {
  if (!(alpha > 0.0)) throw PreconditionViolated("alpha must be positive");
  std::mt19937_64 rng(seed);
  auto resample = [&](const std::vector<double>& base) {
    std::vector<double> row = base;
    if (smooth_zeros) {
      for (double& v : row) v += 1e-12;
      row = normalized(row);
    }
    std::vector<double> draw(row.size());
    double sum = 0.0;
    for (size_t j = 0; j < row.size(); ++j) {
      if (!(row[j] > 0.0))
        throw PreconditionViolated("zero entry in a base row; pass smooth_zeros to proceed");
      std::gamma_distribution<double> gamma(alpha * row[j], 1.0);
      draw[j] = std::max(gamma(rng), 1e-300);
      sum += draw[j];
    }
    for (double& v : draw) v /= sum;
    return draw;
  };

  Setting out = s;
  for (auto& row : out.q0) row = resample(row);
  for (auto& table : out.qk)
    for (auto& row : table) row = resample(row);
  return out;
}

}  // namespace adcon

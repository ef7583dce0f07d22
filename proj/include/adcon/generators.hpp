#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adcon/model.hpp"

namespace adcon {

// Simple undirected graph; edges are unordered pairs of 0-based indices.
struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Parses edge-list text, one "u v" pair per line; blank lines and lines
// starting with '#' are skipped. Vertex count is 1 + the largest index.
Graph parse_edge_list(const std::string& text);

// Hardness-reduction instance: one zero-cost action per edge plus a cheap
// target action, one signal per vertex plus an expensive dummy, binary
// outcomes, uniform signal distributions. Inspecting a vertex reveals
// whether the chosen edge action is incident to it; only (dummy, second
// outcome) carries reward, and only the target reaches it.
Setting gen_independent_set_instance(const Graph& g, double eps);

// One candidate agent action: a model with an empirical success rate and an
// inference cost.
struct ModelProfile {
  std::string label;
  double mu = 0.0;    // success rate in [0, 1]
  double cost = 0.0;  // action cost
};

// Benchmark-style family: signals count successes over initial_tests
// independent trials, outcomes over refined_tests trials, both Binomial in
// each model's success rate. Actions are sorted by ascending success rate
// (ties by cost). Inspection costs are delta * refined_tests, and the fixed
// cost of the initial tests, delta * initial_tests, is recorded as the
// setting's pay_surcharge. Rewards grow linearly with the observed initial
// success count so the strongest model is worth targeting.
Setting gen_binomial_setting(const std::vector<ModelProfile>& profiles, int initial_tests,
                             int refined_tests, double delta, double reward_scale = 1e6);

// Correlated variant: trial success probabilities share a Beta prior with
// mean mu and correlation rho, so signals follow a Beta-Binomial and each
// observed success count k updates the outcome distribution through the
// conjugate posterior. rho -> 0 recovers gen_binomial_setting.
Setting gen_beta_binomial_setting(const std::vector<ModelProfile>& profiles, int initial_tests,
                                  int refined_tests, double delta, double rho,
                                  double reward_scale = 1e6);

// Resamples every probability row from Dirichlet(alpha * row); larger alpha
// concentrates closer to the base setting. Deterministic for a fixed seed.
// Rows containing zeros are rejected unless smooth_zeros adds 1e-12 mass
// (with renormalization) before sampling.
Setting perturb_dirichlet(const Setting& s, double alpha, std::uint64_t seed,
                          bool smooth_zeros = false);

}  // namespace adcon

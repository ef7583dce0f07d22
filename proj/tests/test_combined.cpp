#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "adcon/combined.hpp"
#include "adcon/model.hpp"
#include "helpers.hpp"

using namespace adcon;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

TEST_CASE("never inspecting keeps all mass on signal atoms") {
  const Setting s = testutil::fixture_three_actions();
  const CombinedDistribution cd = combined_distribution(s, {0.0, 0.0});
  REQUIRE(cd.ell == 2);
  REQUIRE(cd.num_atoms() == 2 + 2 + 2);
  for (int i = 0; i < s.num_actions(); ++i) {
    for (int k = 0; k < 2; ++k)
      CHECK(cd.f[i][cd.signal_atom(k)] == doctest::Approx(s.q0[i][k]).epsilon(1e-12));
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) CHECK(cd.f[i][cd.outcome_atom(k, j)] == 0.0);
  }
}

TEST_CASE("always inspecting routes all mass to outcome atoms") {
  const Setting s = testutil::fixture_two_actions();
  const CombinedDistribution cd = combined_distribution(s, {1.0});
  REQUIRE(cd.num_atoms() == 1 + 2);
  // Action 0 deterministically yields outcome 0, action 1 outcome 1.
  CHECK(cd.f[0][cd.signal_atom(0)] == 0.0);
  CHECK(cd.f[1][cd.signal_atom(0)] == 0.0);
  CHECK(cd.f[0][cd.outcome_atom(0, 0)] == doctest::Approx(1.0));
  CHECK(cd.f[0][cd.outcome_atom(0, 1)] == doctest::Approx(0.0));
  CHECK(cd.f[1][cd.outcome_atom(0, 0)] == doctest::Approx(0.0));
  CHECK(cd.f[1][cd.outcome_atom(0, 1)] == doctest::Approx(1.0));
}

TEST_CASE("atom rows are probability distributions") {
  std::mt19937 rng(20);
  for (int it = 0; it < 1000; ++it) {
    const Setting s = testutil::random_setting(rng);
    const std::vector<double> p = testutil::random_policy(rng, s.num_signals(), false);
    const CombinedDistribution cd = combined_distribution(s, p);
    REQUIRE(static_cast<int>(cd.f.size()) == s.num_actions());
    for (const auto& row : cd.f) {
      double sum = 0.0;
      for (double v : row) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("payment vector lines up with the atom order") {
  const Setting s = testutil::fixture_two_actions();
  Contract ct = zero_contract(s);
  CHECK(combined_payments(s, ct) == std::vector<double>{0.0, 0.0, 0.0});

  ct.p = {1.0};
  ct.t[0] = {0.0, 1.0};
  CHECK(combined_payments(s, ct) == std::vector<double>{0.0, 0.0, 1.0});
}

TEST_CASE("flattened expectation equals the direct payment functional") {
  std::mt19937 rng(21);
  for (int it = 0; it < 1000; ++it) {
    const Setting s = testutil::random_setting(rng);
    const Contract ct = testutil::random_contract(rng, s);
    const CombinedDistribution cd = combined_distribution(s, ct.p);
    const std::vector<double> v = combined_payments(s, ct);
    REQUIRE(static_cast<int>(v.size()) == cd.num_atoms());
    for (int i = 0; i < s.num_actions(); ++i) {
      CHECK(dot(cd.f[i], v) == doctest::Approx(expected_payment(s, ct, i)).epsilon(1e-9));
    }
  }
}

TEST_CASE("flattened payment plus inspection cost recovers the principal's outlay") {
  std::mt19937 rng(22);
  for (int it = 0; it < 200; ++it) {
    const Setting s = testutil::random_setting(rng);
    const Contract ct = testutil::random_contract(rng, s);
    const CombinedDistribution cd = combined_distribution(s, ct.p);
    const std::vector<double> v = combined_payments(s, ct);
    for (int i = 0; i < s.num_actions(); ++i) {
      // Direct computation of T_i + D_i from the model primitives.
      double direct = expected_payment(s, ct, i) + expected_inspection_cost(s, ct, i);
      double flattened = dot(cd.f[i], v);
      for (int k = 0; k < s.num_signals(); ++k) flattened += s.q0[i][k] * ct.p[k] * s.d[k];
      CHECK(flattened == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("raising one inspection probability shifts mass conservatively") {
  std::mt19937 rng(23);
  for (int it = 0; it < 100; ++it) {
    const Setting s = testutil::random_setting(rng);
    const int ell = s.num_signals();
    std::vector<double> p = testutil::random_policy(rng, ell, false);
    std::uniform_int_distribution<int> pick(0, ell - 1);
    const int k = pick(rng);
    p[k] = 0.3;
    std::vector<double> p2 = p;
    p2[k] = 0.8;
    const double dp = 0.5;

    const CombinedDistribution before = combined_distribution(s, p);
    const CombinedDistribution after = combined_distribution(s, p2);
    for (int i = 0; i < s.num_actions(); ++i) {
      const double moved = s.q0[i][k] * dp;
      CHECK(before.f[i][before.signal_atom(k)] - after.f[i][after.signal_atom(k)] ==
            doctest::Approx(moved).epsilon(1e-12));
      double gained = 0.0;
      for (int j = 0; j < s.num_outcomes(k); ++j)
        gained += after.f[i][after.outcome_atom(k, j)] - before.f[i][before.outcome_atom(k, j)];
      CHECK(gained == doctest::Approx(moved).epsilon(1e-12));
      // Conditional outcome ratios within the signal are policy-independent.
      for (int j = 0; j < s.num_outcomes(k); ++j) {
        CHECK(after.f[i][after.outcome_atom(k, j)] ==
              doctest::Approx(s.q0[i][k] * 0.8 * s.qk[k][i][j]).epsilon(1e-12));
      }
      // Other signals' atoms are untouched.
      for (int k2 = 0; k2 < ell; ++k2) {
        if (k2 == k) continue;
        CHECK(before.f[i][before.signal_atom(k2)] ==
              doctest::Approx(after.f[i][after.signal_atom(k2)]).epsilon(1e-12));
      }
    }
  }
}

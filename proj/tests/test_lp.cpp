#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "adcon/lp.hpp"

using namespace adcon;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool close(double a, double b, double tol = 1e-6) {
  return std::abs(a - b) <= tol + 1e-9 * std::abs(b);
}

// Gaussian elimination with partial pivoting; false when singular.
bool gaussian_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                    std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-10) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return true;
}

struct OracleVerdict {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
};

// Independent oracle: pool every constraint as an inequality row (equalities
// contribute both directions, finite lower bounds contribute -x_j <= -lo_j),
// enumerate all num_vars-subsets, intersect, and keep the cheapest feasible
// point. Exact whenever the feasible region is a polytope, which every
// generated instance guarantees via an explicit box row; free variables are
// not supported here.
OracleVerdict vertex_oracle(const LpProblem& p) {
  const int nv = p.num_vars();
  std::vector<std::vector<double>> rows = p.a_ub;
  std::vector<double> rhs = p.b_ub;
  for (size_t e = 0; e < p.a_eq.size(); ++e) {
    rows.push_back(p.a_eq[e]);
    rhs.push_back(p.b_eq[e]);
    std::vector<double> neg(nv);
    for (int j = 0; j < nv; ++j) neg[j] = -p.a_eq[e][j];
    rows.push_back(neg);
    rhs.push_back(-p.b_eq[e]);
  }
  std::vector<double> lower = p.lower.empty() ? std::vector<double>(nv, 0.0) : p.lower;
  for (int j = 0; j < nv; ++j) {
    std::vector<double> row(nv, 0.0);
    row[j] = -1.0;
    rows.push_back(row);
    rhs.push_back(-lower[j]);
  }

  const int total = static_cast<int>(rows.size());
  std::vector<int> pick(nv);
  OracleVerdict verdict;
  bool found = false;

  auto try_subset = [&](const std::vector<int>& subset) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int r : subset) {
      a.push_back(rows[r]);
      b.push_back(rhs[r]);
    }
    std::vector<double> x;
    if (!gaussian_solve(std::move(a), std::move(b), x)) return;
    for (int r = 0; r < total; ++r) {
      double lhs = 0.0;
      for (int j = 0; j < nv; ++j) lhs += rows[r][j] * x[j];
      if (lhs > rhs[r] + 1e-7) return;
    }
    double obj = 0.0;
    for (int j = 0; j < nv; ++j) obj += p.c[j] * x[j];
    if (!found || obj < verdict.objective) {
      verdict.objective = obj;
      found = true;
    }
  };

  // Lexicographic subset enumeration of size nv.
  for (int j = 0; j < nv; ++j) pick[j] = j;
  if (total >= nv) {
    while (true) {
      try_subset(pick);
      int i = nv - 1;
      while (i >= 0 && pick[i] == total - nv + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < nv; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  verdict.status = found ? LpStatus::Optimal : LpStatus::Infeasible;
  return verdict;
}

LpProblem random_bounded_lp(std::mt19937& rng, bool with_eq, bool shifted_lower) {
  std::uniform_int_distribution<int> nvars(2, 3), nrows(1, 4);
  std::uniform_real_distribution<double> coef(-2.0, 2.0), rhs(-0.8, 2.5);
  std::uniform_real_distribution<double> box(1.5, 5.0), eq_coef(0.2, 1.5), eq_rhs(-0.3, 2.0);
  std::uniform_real_distribution<double> lo(-1.0, 0.5);

  LpProblem p;
  const int nv = nvars(rng);
  const int nr = nrows(rng);
  p.c.resize(nv);
  for (double& v : p.c) v = coef(rng);
  for (int r = 0; r < nr; ++r) {
    std::vector<double> row(nv);
    for (double& v : row) v = coef(rng);
    p.add_ub(std::move(row), rhs(rng));
  }
  p.add_ub(std::vector<double>(nv, 1.0), box(rng));
  if (with_eq) {
    std::vector<double> row(nv);
    for (double& v : row) v = eq_coef(rng);
    p.add_eq(std::move(row), eq_rhs(rng));
  }
  if (shifted_lower) {
    p.lower.resize(nv);
    for (double& v : p.lower) v = lo(rng);
  }
  return p;
}

void check_optimal_certificates(const LpProblem& p, const LpSolution& sol) {
  const int nv = p.num_vars();
  REQUIRE(static_cast<int>(sol.x.size()) == nv);
  REQUIRE(sol.dual_ub.size() == p.a_ub.size());
  REQUIRE(sol.dual_eq.size() == p.a_eq.size());

  const std::vector<double> lower = p.lower.empty() ? std::vector<double>(nv, 0.0) : p.lower;
  double cx = 0.0;
  for (int j = 0; j < nv; ++j) {
    cx += p.c[j] * sol.x[j];
    if (std::isfinite(lower[j])) CHECK(sol.x[j] >= lower[j] - 1e-7);
  }
  CHECK(close(sol.objective, cx, 1e-7));

  for (size_t r = 0; r < p.a_ub.size(); ++r) {
    double lhs = 0.0;
    for (int j = 0; j < nv; ++j) lhs += p.a_ub[r][j] * sol.x[j];
    CHECK(lhs <= p.b_ub[r] + 1e-7);                            // primal feasibility
    CHECK(sol.dual_ub[r] >= -1e-9);                            // dual sign
    CHECK(sol.dual_ub[r] * (p.b_ub[r] - lhs) <= 1e-6);         // complementary slackness
  }
  for (size_t r = 0; r < p.a_eq.size(); ++r) {
    double lhs = 0.0;
    for (int j = 0; j < nv; ++j) lhs += p.a_eq[r][j] * sol.x[j];
    CHECK(std::abs(lhs - p.b_eq[r]) <= 1e-7);
  }

  // With all-zero lower bounds, strong duality reads
  //   c.x = -(dual_ub . b_ub) - (dual_eq . b_eq)
  // and stationarity gives nonnegative reduced costs.
  bool zero_lower = true;
  for (int j = 0; j < nv; ++j)
    if (lower[j] != 0.0) zero_lower = false;
  if (zero_lower) {
    double dual_obj = 0.0;
    for (size_t r = 0; r < p.b_ub.size(); ++r) dual_obj -= sol.dual_ub[r] * p.b_ub[r];
    for (size_t r = 0; r < p.b_eq.size(); ++r) dual_obj -= sol.dual_eq[r] * p.b_eq[r];
    CHECK(close(sol.objective, dual_obj, 1e-6));
    for (int j = 0; j < nv; ++j) {
      double rc = p.c[j];
      for (size_t r = 0; r < p.a_ub.size(); ++r) rc += sol.dual_ub[r] * p.a_ub[r][j];
      for (size_t r = 0; r < p.a_eq.size(); ++r) rc += sol.dual_eq[r] * p.a_eq[r][j];
      CHECK(rc >= -1e-6);
    }
  }
}

}  // namespace

TEST_CASE("one-variable bound is attained") {
  LpProblem p;
  p.c = {1.0};
  p.add_ub({-1.0}, -3.0);  // x >= 3
  LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(close(sol.x[0], 3.0));
  CHECK(close(sol.objective, 3.0));
}

TEST_CASE("empty feasible set is reported infeasible with a positive certificate") {
  LpProblem p;
  p.c = {0.0};
  p.add_ub({1.0}, -1.0);  // x <= -1 with x >= 0
  LpSolution sol = solve_lp(p);
  CHECK(sol.status == LpStatus::Infeasible);
  CHECK(sol.phase1_infeasibility > 1e-7);
}

TEST_CASE("negative right-hand side forces a first-phase pivot") {
  // min x2 s.t. x1 - x2 <= -1: the origin is infeasible, the optimum is
  // x = (0, 1). Regression for the tracked-objective sign during pivots.
  LpProblem p;
  p.c = {0.0, 1.0};
  p.add_ub({1.0, -1.0}, -1.0);
  LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(close(sol.objective, 1.0));
  check_optimal_certificates(p, sol);
}

TEST_CASE("two-constraint optimum exposes both duals") {
  // min -x1 - 2 x2 s.t. x1 + x2 <= 4, x2 <= 2 -> x = (2, 2), value -6,
  // duals (1, 1) by solving the tight 2x2 dual system by hand.
  LpProblem p;
  p.c = {-1.0, -2.0};
  p.add_ub({1.0, 1.0}, 4.0);
  p.add_ub({0.0, 1.0}, 2.0);
  LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(close(sol.objective, -6.0));
  CHECK(close(sol.x[0], 2.0));
  CHECK(close(sol.x[1], 2.0));
  CHECK(close(sol.dual_ub[0], 1.0));
  CHECK(close(sol.dual_ub[1], 1.0));
  check_optimal_certificates(p, sol);
}

TEST_CASE("equality row with a redundant zero row stays solvable") {
  LpProblem p;
  p.c = {1.0, 0.0};
  p.add_eq({1.0, 1.0}, 1.0);
  p.add_eq({0.0, 0.0}, 0.0);  // artificial can only be driven out degenerately
  LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(close(sol.objective, 0.0));
  check_optimal_certificates(p, sol);
}

TEST_CASE("contradictory equalities are infeasible") {
  LpProblem p;
  p.c = {0.5, 0.5};
  p.add_eq({1.0, 1.0}, 1.0);
  p.add_eq({1.0, 1.0}, 2.0);
  LpSolution sol = solve_lp(p);
  CHECK(sol.status == LpStatus::Infeasible);
  CHECK(sol.phase1_infeasibility > 1e-7);
}

TEST_CASE("equality plus cap mix") {
  // min -x2 s.t. x1 + x2 = 1, x2 <= 0.4 -> x = (0.6, 0.4), value -0.4.
  LpProblem p;
  p.c = {0.0, -1.0};
  p.add_eq({1.0, 1.0}, 1.0);
  p.add_ub({0.0, 1.0}, 0.4);
  LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(close(sol.objective, -0.4));
  check_optimal_certificates(p, sol);
}

TEST_CASE("frozen battery solved independently ahead of time") {
  struct FrozenCase {
    const char* name;
    std::vector<double> c;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<double> lower;
    LpStatus status;
    double obj;
  };
  // Expected values frozen from an external solver before this suite ever
  // ran; entries rounded to three decimals at generation time.
  const std::vector<FrozenCase> battery = {
      {"beale_cycling",
       {-0.75, 150.0, -0.02, 6.0},
       {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}},
       {0.0, 0.0, 1.0},
       {},
       {},
       {},
       LpStatus::Optimal,
       -0.05},
      {"ub_box_0",
       {0.171, 0.114, -2.521, -2.825},
       {{0.622, -0.485, 1.099, -1.939}, {1.925, -1.36, -0.563, -1.362}, {1.0, 1.0, 1.0, 1.0}},
       {2.55, 2.31, 4.751},
       {},
       {},
       {},
       LpStatus::Optimal,
       -13.421575000000002},
      {"ub_box_1",
       {-2.612, 0.516},
       {{0.75, 1.851}, {0.135, 1.153}, {0.449, -0.727}, {1.0, 1.0}},
       {0.765, 2.435, 1.802, 3.825},
       {},
       {},
       {},
       LpStatus::Optimal,
       -2.66424},
      {"ub_box_2",
       {1.566, -0.84, -2.808},
       {{-1.021, -1.356, -0.499}, {1.0, 1.0, 1.0}},
       {0.536, 5.941},
       {},
       {},
       {},
       LpStatus::Optimal,
       -16.682328},
      {"ub_box_3",
       {-2.961, -0.762},
       {{0.258, 1.995}, {0.48, 1.441}, {1.0, 1.0}},
       {0.59, 2.425, 4.287},
       {},
       {},
       {},
       LpStatus::Optimal,
       -6.7712790697674405},
      {"mix_eq_0",
       {1.206, 2.373, 0.182, -2.237},
       {{-1.285, -0.904, 1.639, 1.313}, {1.0, 1.0, 1.0, 1.0}},
       {2.673, 3.762},
       {{1.499, 1.4, 1.271, 1.102}},
       {1.119},
       {},
       LpStatus::Optimal,
       -2.271509074410163},
      {"mix_eq_1",
       {1.96, 0.249, 1.713, -1.775},
       {{-1.222, -1.168, 1.781, -1.346}, {-1.989, -1.207, 0.979, 0.693}, {1.0, 1.0, 1.0, 1.0}},
       {0.85, 0.944, 4.486},
       {{1.163, 0.521, 1.268, 0.319}},
       {1.101},
       {},
       LpStatus::Optimal,
       -4.177527968625601},
      {"mix_eq_2",
       {1.548, 2.276},
       {{1.697, 0.289}, {1.0, 1.0}},
       {0.97, 7.892},
       {{0.746, 1.425}},
       {1.498},
       {},
       LpStatus::Optimal,
       2.392595087719298},
      {"shift_lower_0",
       {-2.254, -1.675},
       {{-0.974, 0.723}, {1.0, 1.0}},
       {1.217, 3.305},
       {},
       {},
       {0.322, 0.799},
       LpStatus::Optimal,
       -6.986849},
      {"shift_lower_1",
       {2.096, 1.823},
       {{-1.68, 1.014}, {1.0, 1.0}},
       {1.339, 1.346},
       {},
       {},
       {-1.069, 0.155},
       LpStatus::Optimal,
       -1.1919086190476191},
      {"free_var_0",
       {1.522, -0.387, 0.362},
       {{-0.733, -0.47, 0.878}, {1.0, 0.0, 1.0}},
       {1.029, 2.94},
       {{1.332, 1.061, 1.171}},
       {0.639},
       {0.0, kNegInf, 0.0},
       LpStatus::Optimal,
       -0.23307540056550427},
      {"free_var_1",
       {0.404, -1.487, -0.671},
       {{0.996, -0.193, -0.377}, {1.0, 0.0, 1.0}},
       {0.69, 3.416},
       {{0.514, 0.53, 0.669}},
       {-0.357},
       {0.0, kNegInf, 0.0},
       LpStatus::Optimal,
       1.001620754716981},
      {"infeasible_ub",
       {1.0, 0.0},
       {{1.0, 0.0}},
       {-1.0},
       {},
       {},
       {},
       LpStatus::Infeasible,
       0.0},
      {"infeasible_eq",
       {0.5, 0.5},
       {},
       {},
       {{1.0, 1.0}, {1.0, 1.0}},
       {1.0, 2.0},
       {},
       LpStatus::Infeasible,
       0.0},
      {"unbounded_plain",
       {-1.0, 0.0},
       {{0.0, 1.0}},
       {1.0},
       {},
       {},
       {},
       LpStatus::Unbounded,
       0.0},
      {"unbounded_free",
       {0.0, 1.0, 0.0},
       {{0.0, 1.0, 0.0}},
       {0.0},
       {},
       {},
       {0.0, kNegInf, 0.0},
       LpStatus::Unbounded,
       0.0},
  };

  for (const FrozenCase& fc : battery) {
    CAPTURE(fc.name);
    LpProblem p;
    p.c = fc.c;
    p.a_ub = fc.a_ub;
    p.b_ub = fc.b_ub;
    p.a_eq = fc.a_eq;
    p.b_eq = fc.b_eq;
    p.lower = fc.lower;
    LpSolution sol = solve_lp(p);
    CHECK(sol.status == fc.status);
    CHECK(sol.iterations < 10000);  // anti-cycling must terminate the search
    if (fc.status == LpStatus::Optimal && sol.status == LpStatus::Optimal) {
      CHECK(close(sol.objective, fc.obj));
      check_optimal_certificates(p, sol);
    }
    if (fc.status == LpStatus::Infeasible) CHECK(sol.phase1_infeasibility > 1e-7);
  }
}

TEST_CASE("random bounded programs match vertex enumeration") {
  std::mt19937 rng(20260815);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int it = 0; it < 500; ++it) {
    CAPTURE(it);
    LpProblem p = random_bounded_lp(rng, false, false);
    OracleVerdict expect = vertex_oracle(p);
    LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == expect.status);
    if (expect.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(close(sol.objective, expect.objective));
      check_optimal_certificates(p, sol);
    } else {
      ++infeasible_seen;
      CHECK(sol.phase1_infeasibility > 1e-7);
    }
  }
  // The generator must exercise both outcomes to mean anything.
  CHECK(optimal_seen > 50);
  CHECK(infeasible_seen > 50);
}

TEST_CASE("random programs with an equality row match vertex enumeration") {
  std::mt19937 rng(777001);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int it = 0; it < 250; ++it) {
    CAPTURE(it);
    LpProblem p = random_bounded_lp(rng, true, false);
    OracleVerdict expect = vertex_oracle(p);
    LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == expect.status);
    if (expect.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(close(sol.objective, expect.objective));
      check_optimal_certificates(p, sol);
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(optimal_seen > 25);
  CHECK(infeasible_seen > 25);
}

TEST_CASE("random programs with shifted lower bounds match vertex enumeration") {
  std::mt19937 rng(424242);
  int optimal_seen = 0;
  for (int it = 0; it < 150; ++it) {
    CAPTURE(it);
    LpProblem p = random_bounded_lp(rng, false, true);
    OracleVerdict expect = vertex_oracle(p);
    LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == expect.status);
    if (expect.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(close(sol.objective, expect.objective));
      check_optimal_certificates(p, sol);
    }
  }
  CHECK(optimal_seen > 25);
}

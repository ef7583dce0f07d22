#include "adcon/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adcon/errors.hpp"

namespace adcon {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-7;    // phase-1 optimum above this => infeasible
constexpr double kCostTol = 1e-9;    // reduced-cost threshold for optimality
constexpr double kPivotTol = 1e-9;   // preferred minimum pivot magnitude
constexpr double kHardPivotTol = 1e-12;

struct ColMeta {
  int var = -1;       // original variable index, -1 for slack/artificial
  double sign = 1.0;  // contribution sign (free variables are split)
  bool artificial = false;
};

// Dense two-phase tableau simplex with Dantzig pricing and a Bland fallback.
class Simplex {
 public:
  Simplex(const LpProblem& p, std::vector<double> lower) : p_(p), lower_(std::move(lower)) {
    build();
  }

  LpSolution run() {
    LpSolution out;

    // Phase 1: minimize the sum of artificials.
    set_phase_objective(1);
    if (iterate(1) != 0)
      throw NumericalFailure("phase-1 unbounded; artificial objective is bounded below");
    if (objval_ > kFeasTol) {
      out.status = LpStatus::Infeasible;
      out.phase1_infeasibility = objval_;
      out.iterations = total_iters_;
      return out;
    }
    drive_out_artificials();

    // Phase 2: original objective, artificials barred from entering.
    set_phase_objective(2);
    if (iterate(2) != 0) {
      out.status = LpStatus::Unbounded;
      out.iterations = total_iters_;
      return out;
    }

    out.status = LpStatus::Optimal;
    out.iterations = total_iters_;
    out.x.assign(p_.num_vars(), 0.0);
    for (int j = 0; j < p_.num_vars(); ++j)
      if (std::isfinite(lower_[j])) out.x[j] = lower_[j];
    for (int r = 0; r < rows_; ++r) {
      const ColMeta& cm = meta_[basis_[r]];
      if (cm.var >= 0) out.x[cm.var] += cm.sign * rhs(r);
    }
    out.objective = 0.0;
    for (int j = 0; j < p_.num_vars(); ++j) out.objective += p_.c[j] * out.x[j];

    // Multipliers for the original rows. The identity column planted in row r
    // at setup has reduced cost -y_r where y is the standard-form dual; undo
    // the row negation applied when making right-hand sides nonnegative.
    const int mu = static_cast<int>(p_.a_ub.size());
    const int me = static_cast<int>(p_.a_eq.size());
    out.dual_ub.assign(mu, 0.0);
    out.dual_eq.assign(me, 0.0);
    for (int r = 0; r < rows_; ++r) {
      const int orig = row_origin_[r];
      const double y = -obj_[id_col_[r]] * row_sign_[r];
      if (orig < mu)
        out.dual_ub[orig] = -y;
      else
        out.dual_eq[orig - mu] = -y;
    }
    return out;
  }

 private:
  double& at(int r, int c) { return tab_[static_cast<size_t>(r) * stride_ + c]; }
  double rhs(int r) const { return tab_[static_cast<size_t>(r) * stride_ + cols_]; }
  double& rhs_ref(int r) { return tab_[static_cast<size_t>(r) * stride_ + cols_]; }

  void build() {
    const int nv = p_.num_vars();
    const int mu = static_cast<int>(p_.a_ub.size());
    const int me = static_cast<int>(p_.a_eq.size());

    // Structural columns: shifted for finite lower bounds, split when free.
    std::vector<int> pos_col(nv), neg_col(nv, -1);
    for (int j = 0; j < nv; ++j) {
      pos_col[j] = static_cast<int>(meta_.size());
      meta_.push_back({j, 1.0, false});
      if (!std::isfinite(lower_[j])) {
        neg_col[j] = static_cast<int>(meta_.size());
        meta_.push_back({j, -1.0, false});
      }
    }
    const int ns = static_cast<int>(meta_.size());
    const int slack_base = ns;
    for (int r = 0; r < mu; ++r) meta_.push_back({-1, 1.0, false});

    rows_ = mu + me;
    // Upper bound on total columns: structural + slacks + one artificial/row.
    cols_ = ns + mu;  // artificials appended below
    std::vector<std::vector<double>> dense(rows_);
    std::vector<double> b(rows_);
    row_origin_.resize(rows_);
    row_sign_.assign(rows_, 1.0);
    id_col_.assign(rows_, -1);

    auto fill_row = [&](int r, const std::vector<double>& a, double brow) {
      dense[r].assign(cols_, 0.0);
      double shift_adjust = 0.0;
      for (int j = 0; j < nv; ++j) {
        const double aj = a[j];
        if (aj == 0.0) continue;
        dense[r][pos_col[j]] = aj;
        if (neg_col[j] >= 0) dense[r][neg_col[j]] = -aj;
        if (std::isfinite(lower_[j])) shift_adjust += aj * lower_[j];
      }
      b[r] = brow - shift_adjust;
    };
    for (int r = 0; r < mu; ++r) {
      fill_row(r, p_.a_ub[r], p_.b_ub[r]);
      dense[r][slack_base + r] = 1.0;
      row_origin_[r] = r;
    }
    for (int r = 0; r < me; ++r) {
      fill_row(mu + r, p_.a_eq[r], p_.b_eq[r]);
      row_origin_[mu + r] = mu + r;
    }

    // Negate rows with negative right-hand side, then plant identity columns:
    // the slack where it already is one, an artificial otherwise.
    std::vector<int> art_rows;
    basis_.assign(rows_, -1);
    for (int r = 0; r < rows_; ++r) {
      if (b[r] < 0) {
        row_sign_[r] = -1.0;
        b[r] = -b[r];
        for (double& v : dense[r]) v = -v;
      }
      const bool slack_usable = r < mu && row_sign_[r] > 0;
      if (slack_usable) {
        basis_[r] = slack_base + r;
        id_col_[r] = slack_base + r;
      } else {
        art_rows.push_back(r);
      }
    }
    for (size_t a = 0; a < art_rows.size(); ++a) {
      meta_.push_back({-1, 1.0, true});
      ++cols_;
    }

    stride_ = cols_ + 1;
    tab_.assign(static_cast<size_t>(rows_) * stride_, 0.0);
    int next_art = ns + mu;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < ns + mu; ++c) at(r, c) = dense[r][c];
      rhs_ref(r) = b[r];
    }
    for (int r : art_rows) {
      at(r, next_art) = 1.0;
      basis_[r] = next_art;
      id_col_[r] = next_art;
      ++next_art;
    }
  }

  // Reduced-cost row and current objective value for the requested phase.
  void set_phase_objective(int phase) {
    phase_ = phase;
    cost_.assign(cols_, 0.0);
    if (phase == 1) {
      for (int c = 0; c < cols_; ++c)
        if (meta_[c].artificial) cost_[c] = 1.0;
    } else {
      for (int c = 0; c < cols_; ++c)
        if (meta_[c].var >= 0) cost_[c] = p_.c[meta_[c].var] * meta_[c].sign;
    }
    obj_.assign(cols_, 0.0);
    objval_ = 0.0;
    for (int c = 0; c < cols_; ++c) obj_[c] = cost_[c];
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb == 0.0) continue;
      for (int c = 0; c < cols_; ++c) obj_[c] -= cb * at(r, c);
      objval_ += cb * rhs(r);
    }
  }

  // Returns 0 when optimal, 1 when unbounded.
  int iterate(int phase) {
    const long long bland_after = 5LL * (rows_ + cols_);
    const long long hard_cap = 2000LL * (rows_ + cols_) + 100000;
    for (long long it = 0;; ++it, ++total_iters_) {
      if (total_iters_ > hard_cap)
        throw NumericalFailure("simplex iteration cap exceeded");
      const bool bland = it >= bland_after;
      const int enter = pick_entering(phase, bland);
      if (enter < 0) return 0;
      const int leave = pick_leaving(enter, bland);
      if (leave < 0) return 1;
      if (std::abs(at(leave, enter)) < kHardPivotTol) {
        // Degenerate pivot under the current rule; retry with Bland once,
        // then give up.
        const int enter2 = pick_entering(phase, true);
        const int leave2 = enter2 >= 0 ? pick_leaving(enter2, true) : -1;
        if (leave2 < 0 || std::abs(at(leave2, enter2)) < kHardPivotTol)
          throw NumericalFailure("pivot magnitude below 1e-12 under both rules");
        pivot(leave2, enter2);
        continue;
      }
      pivot(leave, enter);
    }
  }

  int pick_entering(int phase, bool bland) const {
    int enter = -1;
    double best = -kCostTol;
    for (int c = 0; c < cols_; ++c) {
      if (phase == 2 && meta_[c].artificial) continue;
      const double rc = obj_[c];
      if (rc < -kCostTol) {
        if (bland) return c;
        if (rc < best) {
          best = rc;
          enter = c;
        }
      }
    }
    return enter;
  }

  int pick_leaving(int enter, bool bland) {
    int leave = -1;
    double best_ratio = kInf;
    for (int r = 0; r < rows_; ++r) {
      const double a = at(r, enter);
      if (a < kHardPivotTol) continue;
      const double ratio = rhs(r) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
        if (bland) {
          if (basis_[r] < basis_[leave]) leave = r;
        } else if (std::abs(a) > std::abs(at(leave, enter))) {
          leave = r;
        }
      }
    }
    return leave;
  }

  void pivot(int leave, int enter) {
    const double piv = at(leave, enter);
    const double inv = 1.0 / piv;
    for (int c = 0; c <= cols_; ++c) at(leave, c) *= inv;
    at(leave, enter) = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(leave, c);
      at(r, enter) = 0.0;
    }
    const double f = obj_[enter];
    if (f != 0.0) {
      for (int c = 0; c < cols_; ++c) obj_[c] -= f * at(leave, c);
      obj_[enter] = 0.0;
      // The entering variable takes value rhs(leave) after the row scaling,
      // so the tracked objective moves by its reduced cost times that value.
      objval_ += f * rhs(leave);
    }
    basis_[leave] = enter;
  }

  // After phase 1, pivot artificials out of the basis; rows where no real
  // column is available are redundant and get their multipliers from the
  // zero reduced cost of the planted identity column, which is exact.
  void drive_out_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (!meta_[basis_[r]].artificial) continue;
      int enter = -1;
      for (int c = 0; c < cols_; ++c) {
        if (meta_[c].artificial) continue;
        if (std::abs(at(r, c)) > kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter >= 0) pivot(r, enter);
    }
  }

  const LpProblem& p_;
  std::vector<double> lower_;
  std::vector<ColMeta> meta_;
  std::vector<double> tab_;
  std::vector<double> cost_, obj_;
  std::vector<int> basis_, id_col_, row_origin_;
  std::vector<double> row_sign_;
  int rows_ = 0, cols_ = 0, stride_ = 0, phase_ = 1;
  double objval_ = 0.0;
  long long total_iters_ = 0;
};

void validate_problem(const LpProblem& p) {
  const size_t nv = p.c.size();
  auto check_rows = [&](const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                        const char* what) {
    if (a.size() != b.size()) throw PreconditionViolated(std::string(what) + ": row count mismatch");
    for (const auto& row : a) {
      if (row.size() != nv) throw PreconditionViolated(std::string(what) + ": row length mismatch");
      for (double v : row)
        if (!std::isfinite(v)) throw PreconditionViolated(std::string(what) + ": non-finite coefficient");
    }
    for (double v : b)
      if (!std::isfinite(v)) throw PreconditionViolated(std::string(what) + ": non-finite rhs");
  };
  for (double v : p.c)
    if (!std::isfinite(v)) throw PreconditionViolated("objective: non-finite coefficient");
  check_rows(p.a_ub, p.b_ub, "a_ub");
  check_rows(p.a_eq, p.b_eq, "a_eq");
  if (!p.lower.empty() && p.lower.size() != nv)
    throw PreconditionViolated("lower: length mismatch");
  for (double v : p.lower)
    if (std::isnan(v) || v == kInf) throw PreconditionViolated("lower: must be finite or -inf");
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  validate_problem(problem);
  std::vector<double> lower = problem.lower;
  if (lower.empty()) lower.assign(problem.num_vars(), 0.0);
  Simplex s(problem, std::move(lower));
  return s.run();
}

}  // namespace adcon

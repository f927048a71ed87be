// Copyright 2026 The Ratimpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ratimpl/lp.h"

#include <algorithm>
#include <stdexcept>

namespace ratimpl {

bool LinearConstraint::Holds(const std::vector<Rational>& point) const {
  Rational value(0);
  for (size_t z = 0; z < coefficients.size(); ++z) value += coefficients[z] * point[z];
  switch (relation) {
    case Relation::kGe:
      return value >= bound;
    case Relation::kGt:
      return value > bound;
    case Relation::kLe:
      return value <= bound;
    case Relation::kLt:
      return value < bound;
  }
  return false;
}

Rational LinearConstraint::StrictMargin(const std::vector<Rational>& point) const {
  Rational value(0);
  for (size_t z = 0; z < coefficients.size(); ++z) value += coefficients[z] * point[z];
  return relation == Relation::kGt ? value - bound : bound - value;
}

namespace {

// Tableau simplex over exact rationals. Rows: constraints in equality form
// with slack and artificial columns; last row is the objective. Bland's rule
// guarantees termination.
class Tableau {
 public:
  Tableau(const DenseLp& lp) : n_(lp.num_vars) {
    const int num_eq = static_cast<int>(lp.eq_a.size());
    const int num_le = static_cast<int>(lp.le_a.size());
    m_ = num_eq + num_le;
    num_slack_ = num_le;
    cols_ = n_ + num_slack_ + m_;  // structural + slack + artificial
    rows_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m_, -1);

    int r = 0;
    for (int i = 0; i < num_eq; ++i, ++r) {
      for (int j = 0; j < n_; ++j) rows_[r][j] = lp.eq_a[i][j];
      rows_[r][cols_] = lp.eq_b[i];
    }
    for (int i = 0; i < num_le; ++i, ++r) {
      for (int j = 0; j < n_; ++j) rows_[r][j] = lp.le_a[i][j];
      rows_[r][n_ + i] = 1;  // slack
      rows_[r][cols_] = lp.le_b[i];
    }
    // Normalize signs so every right-hand side is nonnegative, then give each
    // row its artificial variable as the starting basis.
    for (int i = 0; i < m_; ++i) {
      if (rows_[i][cols_] < 0) {
        for (auto& v : rows_[i]) v = -v;
      }
      const int art = n_ + num_slack_ + i;
      rows_[i][art] = 1;
      basis_[i] = art;
    }
  }

  // Phase 1: maximize -(sum of artificials). Feasible iff optimum is 0.
  bool Phase1() {
    std::vector<Rational> cost(cols_, Rational(0));
    for (int j = n_ + num_slack_; j < cols_; ++j) cost[j] = -1;
    RunSimplex(cost);
    Rational value(0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_ + num_slack_) value -= rows_[i][cols_];
    }
    if (value != 0) return false;
    // Drive remaining artificials out of the basis, dropping redundant rows.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + num_slack_) continue;
      int pivot_col = -1;
      for (int j = 0; j < n_ + num_slack_; ++j) {
        if (rows_[i][j] != 0) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col == -1) {
        rows_.erase(rows_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
        --i;
      } else {
        Pivot(i, pivot_col);
      }
    }
    return true;
  }

  // Phase 2 over structural+slack columns. Returns false when unbounded.
  bool Phase2(const std::vector<Rational>& objective) {
    std::vector<Rational> cost(cols_, Rational(0));
    for (int j = 0; j < n_; ++j) cost[j] = objective[j];
    return RunSimplex(cost, /*forbid_artificials=*/true);
  }

  std::vector<Rational> Solution() const {
    std::vector<Rational> x(n_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

 private:
  void Pivot(int row, int col) {
    const Rational pivot = rows_[row][col];
    for (auto& v : rows_[row]) v /= pivot;
    for (int i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational factor = rows_[i][col];
      for (int j = 0; j <= cols_; ++j) rows_[i][j] -= factor * rows_[row][j];
    }
    basis_[row] = col;
  }

  // Maximizes cost . x from the current basic feasible point. Returns false
  // on unboundedness.
  bool RunSimplex(const std::vector<Rational>& cost, bool forbid_artificials = false) {
    const int limit = forbid_artificials ? n_ + num_slack_ : cols_;
    while (true) {
      // Reduced costs: c_j - c_B . B^-1 A_j; Bland picks the smallest index
      // with a positive one.
      int entering = -1;
      for (int j = 0; j < limit; ++j) {
        bool basic = false;
        for (int i = 0; i < m_; ++i) {
          if (basis_[i] == j) {
            basic = true;
            break;
          }
        }
        if (basic) continue;
        Rational reduced = cost[j];
        for (int i = 0; i < m_; ++i) {
          if (cost[basis_[i]] != 0 && rows_[i][j] != 0) {
            reduced -= cost[basis_[i]] * rows_[i][j];
          }
        }
        if (reduced > 0) {
          entering = j;
          break;
        }
      }
      if (entering == -1) return true;

      int leaving = -1;
      Rational best_ratio(0);
      for (int i = 0; i < m_; ++i) {
        if (rows_[i][entering] <= 0) continue;
        const Rational ratio = rows_[i][cols_] / rows_[i][entering];
        if (leaving == -1 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == -1) return false;  // unbounded
      Pivot(leaving, entering);
    }
  }

  int n_;
  int m_;
  int num_slack_;
  int cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
};

Rational Dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational total(0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) total += a[i] * b[i];
  }
  return total;
}

}  // namespace

DenseLpResult SolveDenseLp(const DenseLp& problem) {
  Tableau tableau(problem);
  DenseLpResult result;
  if (!tableau.Phase1()) return result;  // infeasible
  result.feasible = true;
  if (!tableau.Phase2(problem.objective)) {
    result.unbounded = true;
    return result;
  }
  result.x = tableau.Solution();
  result.value = Dot(problem.objective, result.x);
  return result;
}

std::optional<std::vector<Rational>> LexMinFeasiblePoint(DenseLp problem) {
  problem.objective.assign(problem.num_vars, Rational(0));
  DenseLpResult probe = SolveDenseLp(problem);
  if (!probe.feasible) return std::nullopt;
  // Minimize each coordinate in turn, freezing it at its minimum.
  for (int k = 0; k < problem.num_vars; ++k) {
    problem.objective.assign(problem.num_vars, Rational(0));
    problem.objective[k] = -1;
    DenseLpResult step = SolveDenseLp(problem);
    // Coordinates of the simplex-domain systems we build are always bounded.
    if (!step.feasible || step.unbounded) {
      throw std::logic_error("lexicographic refinement lost feasibility");
    }
    std::vector<Rational> fix_row(problem.num_vars, Rational(0));
    fix_row[k] = 1;
    problem.eq_a.push_back(std::move(fix_row));
    problem.eq_b.push_back(step.x[k]);
  }
  DenseLpResult final = SolveDenseLp(problem);
  if (!final.feasible) throw std::logic_error("lexicographic refinement lost feasibility");
  return final.x;
}

LpResult SolveMaxSlack(int num_outcomes, const std::vector<LinearConstraint>& constraints) {
  if (num_outcomes <= 0) throw std::invalid_argument("empty outcome list");
  bool has_strict = false;
  for (const auto& c : constraints) has_strict = has_strict || c.IsStrict();

  // Variables: y_0..y_{n-1}, then delta when strict constraints exist.
  const int num_vars = num_outcomes + (has_strict ? 1 : 0);
  DenseLp lp;
  lp.num_vars = num_vars;
  lp.eq_a.push_back(std::vector<Rational>(num_vars, Rational(0)));
  for (int z = 0; z < num_outcomes; ++z) lp.eq_a[0][z] = 1;
  lp.eq_b.push_back(Rational(1));
  for (const auto& c : constraints) {
    std::vector<Rational> row(num_vars, Rational(0));
    Rational rhs;
    const bool upper = c.relation == Relation::kLe || c.relation == Relation::kLt;
    for (int z = 0; z < num_outcomes; ++z) row[z] = upper ? c.coefficients[z] : -c.coefficients[z];
    rhs = upper ? c.bound : -c.bound;
    if (c.IsStrict()) row[num_outcomes] = 1;
    lp.le_a.push_back(std::move(row));
    lp.le_b.push_back(rhs);
  }

  LpResult result;
  Rational best_slack(0);
  if (has_strict) {
    lp.objective.assign(num_vars, Rational(0));
    lp.objective[num_outcomes] = 1;
    DenseLpResult opt = SolveDenseLp(lp);
    if (!opt.feasible || opt.unbounded || opt.value <= 0) return result;
    best_slack = opt.value;
    // Freeze delta at its optimum before the lexicographic tie-break.
    std::vector<Rational> fix_row(num_vars, Rational(0));
    fix_row[num_outcomes] = 1;
    lp.eq_a.push_back(std::move(fix_row));
    lp.eq_b.push_back(best_slack);
  }

  std::optional<std::vector<Rational>> point = LexMinFeasiblePoint(lp);
  if (!point.has_value()) return result;
  result.status = LpStatus::kFeasible;
  result.slack = best_slack;
  Lottery witness;
  witness.probs.assign(point->begin(), point->begin() + num_outcomes);
  result.witness = std::move(witness);
  return result;
}

std::optional<Lottery> FindBlockingPlan(const Environment& env, int agent,
                                        const std::vector<ContourRequirement>& requirements) {
  if (requirements.empty()) throw std::invalid_argument("empty requirement list");
  std::vector<LinearConstraint> constraints;
  constraints.reserve(requirements.size());
  for (const auto& req : requirements) {
    LinearConstraint c;
    c.coefficients.reserve(env.NumOutcomes());
    for (int z = 0; z < env.NumOutcomes(); ++z) {
      c.coefficients.push_back(env.utility[agent][req.state][z]);
    }
    c.bound = ExpectedUtility(env, agent, req.benchmark, req.state);
    switch (req.kind) {
      case ContourKind::kWeakLower:
        c.relation = Relation::kLe;
        break;
      case ContourKind::kStrictLower:
        c.relation = Relation::kLt;
        break;
      case ContourKind::kStrictUpper:
        c.relation = Relation::kGt;
        break;
    }
    constraints.push_back(std::move(c));
  }
  LpResult result = SolveMaxSlack(env.NumOutcomes(), constraints);
  if (result.status != LpStatus::kFeasible) return std::nullopt;
  return result.witness;
}

bool ContourContainment(const Environment& env, int agent, const Lottery& x, int state,
                        int other_state, ContourKind inner, ContourKind outer) {
  if (inner == ContourKind::kStrictUpper || outer == ContourKind::kStrictUpper) {
    throw std::invalid_argument("containment kinds are weak-lower or strict-lower");
  }
  // inner subset of outer iff {y in inner at state, y outside outer at
  // other_state} has no solution.
  std::vector<ContourRequirement> system;
  system.push_back({state, inner, x});
  // Complement of weak-lower is strict-upper; complement of strict-lower is
  // weak-upper, i.e. a >= constraint.
  if (outer == ContourKind::kWeakLower) {
    system.push_back({other_state, ContourKind::kStrictUpper, x});
    return !FindBlockingPlan(env, agent, system).has_value();
  }
  std::vector<LinearConstraint> constraints;
  LinearConstraint in;
  LinearConstraint out;
  in.coefficients.reserve(env.NumOutcomes());
  out.coefficients.reserve(env.NumOutcomes());
  for (int z = 0; z < env.NumOutcomes(); ++z) {
    in.coefficients.push_back(env.utility[agent][state][z]);
    out.coefficients.push_back(env.utility[agent][other_state][z]);
  }
  in.bound = ExpectedUtility(env, agent, x, state);
  in.relation = inner == ContourKind::kWeakLower ? Relation::kLe : Relation::kLt;
  out.bound = ExpectedUtility(env, agent, x, other_state);
  out.relation = Relation::kGe;
  constraints.push_back(std::move(in));
  constraints.push_back(std::move(out));
  return SolveMaxSlack(env.NumOutcomes(), constraints).status == LpStatus::kInfeasible;
}

}  // namespace ratimpl

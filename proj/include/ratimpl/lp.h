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

#ifndef RATIMPL_LP_H_
#define RATIMPL_LP_H_

#include <optional>
#include <vector>

#include "ratimpl/environment.h"
#include "ratimpl/rational.h"

namespace ratimpl {

enum class Relation { kGe, kGt, kLe, kLt };

// One linear inequality over the probability vector: coefficients . y REL bound.
struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation;
  Rational bound;

  bool IsStrict() const { return relation == Relation::kGt || relation == Relation::kLt; }
  bool Holds(const std::vector<Rational>& point) const;
  // Margin by which a strict constraint holds (value - bound or bound - value).
  Rational StrictMargin(const std::vector<Rational>& point) const;
};

enum class LpStatus { kFeasible, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::optional<Lottery> witness;
  // delta*: the maximized common margin of all strict constraints. Present
  // for feasible results; 0 when the system has no strict constraints.
  std::optional<Rational> slack;
};

// Decides satisfiability of a mixed strict/weak linear system over the
// probability simplex on `num_outcomes` points, via the max-slack
// reformulation: maximize delta subject to the weak constraints as stated and
// each strict constraint tightened by delta. The open system is nonempty iff
// delta* > 0 (the simplex is compact, so delta* is attained and rational).
// The witness is the lexicographically smallest optimal vertex in outcome
// order. Throws std::invalid_argument on an empty outcome list.
LpResult SolveMaxSlack(int num_outcomes, const std::vector<LinearConstraint>& constraints);

// One contour-membership requirement on the plan lottery.
struct ContourRequirement {
  int state;
  ContourKind kind;
  Lottery benchmark;
};

// Builds u_agent(y, state) REL u_agent(benchmark, state) constraints from the
// requirements and delegates to SolveMaxSlack.
std::optional<Lottery> FindBlockingPlan(const Environment& env, int agent,
                                        const std::vector<ContourRequirement>& requirements);

// True iff the inner contour of x at `state` is contained in the outer
// contour of x at `other_state`, i.e. the system {y in inner, y not in outer}
// is infeasible. Kinds are restricted to weak-lower / strict-lower.
bool ContourContainment(const Environment& env, int agent, const Lottery& x, int state,
                        int other_state, ContourKind inner, ContourKind outer);

// General exact LP in the form used by the belief-witness and dominance
// solvers as well: maximize objective . x over {x >= 0, eq_a x = eq_b,
// le_a x <= le_b}. The witness refinement in SolveMaxSlack sits on top.
struct DenseLp {
  int num_vars = 0;
  std::vector<std::vector<Rational>> eq_a;
  std::vector<Rational> eq_b;
  std::vector<std::vector<Rational>> le_a;
  std::vector<Rational> le_b;
  std::vector<Rational> objective;
};

struct DenseLpResult {
  bool feasible = false;
  bool unbounded = false;
  std::vector<Rational> x;
  Rational value;
};

// Two-phase exact simplex with Bland's anti-cycling rule.
DenseLpResult SolveDenseLp(const DenseLp& problem);

// Lexicographically smallest feasible point (by variable order) of the given
// system with objective ignored; empty optional when infeasible.
std::optional<std::vector<Rational>> LexMinFeasiblePoint(DenseLp problem);

}  // namespace ratimpl

#endif  // RATIMPL_LP_H_

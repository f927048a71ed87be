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

#ifndef RATIMPL_AXIOMS_H_
#define RATIMPL_AXIOMS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratimpl/environment.h"
#include "ratimpl/lp.h"
#include "ratimpl/partition.h"

namespace ratimpl {

struct PlanEntry {
  int state;  // the reported state this lottery blocks
  Lottery lottery;
};

struct QualifyingAgent {
  int agent;
  std::vector<PlanEntry> plan;
};

// One quantified instance of an axiom: which states/agents/events it binds,
// and the whistle-blowers that discharge it (empty when it fails).
struct ObligationRecord {
  std::optional<int> agent;              // NWA pair / dictator agent
  std::optional<int> state;              // reported state theta
  std::optional<int> true_state;         // theta'
  std::optional<int> credibility_state;  // theta'' in dictator monotonicity
  std::optional<int> outcome;            // no-veto outcome
  std::vector<int> event;                // E
  std::vector<int> reported_block;       // P(theta) in partition axioms
  std::vector<QualifyingAgent> qualifying;
};

struct EliminationStep {
  int state;
  int agent;
  Lottery lottery;
};

struct EliminationOrder {
  std::vector<EliminationStep> steps;  // deleted states in order, with kf-style witnesses
  int final_state = -1;                // the designated true state, deleted last
};

struct AxiomReport {
  std::string axiom;
  bool holds = false;
  std::optional<Partition> partition;          // witness partition for starred axioms
  std::vector<ObligationRecord> witnesses;     // discharged obligations
  std::vector<ObligationRecord> counterexamples;
  std::map<int, std::optional<EliminationOrder>> eliminations;  // per true state
};

// NWA: every (i, theta) has some outcome strictly worse than f(theta).
AxiomReport CheckNwa(const Environment& env);

// Responsiveness: f injective.
AxiomReport CheckResponsiveness(const Environment& env);

// Maskin monotonicity: whenever f(theta) != f(theta'), some agent j has a
// lottery weakly worse than f(theta) at theta and strictly better at theta'.
AxiomReport CheckMaskinMonotonicity(const Environment& env);

// No-veto power: any outcome top-ranked by all but at most one agent at a
// state must be the f-value there.
AxiomReport CheckNoVeto(const Environment& env);

// Strict Maskin monotonicity: Maskin with the strict lower contour.
AxiomReport CheckStrictMaskin(const Environment& env);

// Strict Maskin monotonicity*: some refinement P of P_f such that each
// (block, outside true state) pair has a whistle-blower with one common
// blocking lottery credible at every state of the block.
AxiomReport CheckStrictMaskinStar(const Environment& env);

// Strict Maskin monotonicity**: as above but with a state-contingent blocking
// plan (one lottery per block state).
AxiomReport CheckStrictMaskinStarStar(const Environment& env);

// Strict event monotonicity: every (true state, event) pair whose f-image
// differs from {f(true state)} has a whistle-blower active on the whole event.
AxiomReport CheckStrictEventMonotonicity(const Environment& env);

// Dictator monotonicity: a sole active agent at theta can block any false
// report credibly at any theta'' whenever f(theta) != f(theta').
AxiomReport CheckDictatorMonotonicity(const Environment& env);

// Greedy deletion of states other than true_state; succeeds iff everything
// else can be deleted with witnesses active on the remaining event.
std::optional<EliminationOrder> CheckStrictIteratedElimination(const Environment& env,
                                                               int true_state);

// Wraps the per-state elimination searches into one report (holds iff the
// order exists for every true state).
AxiomReport CheckStrictIteratedEliminationAll(const Environment& env);

// Strict event monotonicity**: a partition-based combination of the event
// condition (whistle-blowers active on the union of reported blocks) and
// partition-level dictator monotonicity.
AxiomReport CheckStrictEventStarStar(const Environment& env);

// Registered axiom ids, in the order the `check --axiom all` run uses.
std::vector<std::string> AxiomIds();
bool IsAxiomId(const std::string& id);
AxiomReport RunAxiom(const Environment& env, const std::string& id);

}  // namespace ratimpl

#endif  // RATIMPL_AXIOMS_H_

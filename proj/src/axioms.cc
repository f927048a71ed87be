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

#include "ratimpl/axioms.h"

#include <algorithm>
#include <stdexcept>

namespace ratimpl {
namespace {

constexpr int kEventEnumerationCap = 12;

Lottery ScfLottery(const Environment& env, int state) {
  return Lottery::Degenerate(env.scf[state], env.NumOutcomes());
}

bool Contains(const std::vector<int>& sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

// All nonempty subsets of {0..n-1} in ascending bitmask order, as sorted
// state lists.
std::vector<std::vector<int>> AllEvents(const Environment& env) {
  const int n = env.NumStates();
  if (n > kEventEnumerationCap) {
    throw std::invalid_argument("event enumeration is capped at " +
                                std::to_string(kEventEnumerationCap) + " states");
  }
  std::vector<std::vector<int>> events;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> event;
    for (int s = 0; s < n; ++s) {
      if (mask & (1u << s)) event.push_back(s);
    }
    events.push_back(std::move(event));
  }
  return events;
}

// The pairwise whistle-blower query shared by the Maskin-style axioms:
// lower contour of f(theta) at theta (weak or strict), strictly better than
// f(theta) at theta_prime.
std::optional<Lottery> PairwiseBlock(const Environment& env, int agent, int theta,
                                     int theta_prime, ContourKind lower_kind) {
  const Lottery benchmark = ScfLottery(env, theta);
  return FindBlockingPlan(env, agent,
                          {{theta, lower_kind, benchmark},
                           {theta_prime, ContourKind::kStrictUpper, benchmark}});
}

AxiomReport CheckMaskinLike(const Environment& env, const std::string& id,
                            ContourKind lower_kind) {
  AxiomReport report;
  report.axiom = id;
  report.holds = true;
  for (int theta = 0; theta < env.NumStates(); ++theta) {
    for (int theta_prime = 0; theta_prime < env.NumStates(); ++theta_prime) {
      if (env.scf[theta] == env.scf[theta_prime]) continue;
      ObligationRecord record;
      record.state = theta;
      record.true_state = theta_prime;
      for (int j = 0; j < env.NumAgents(); ++j) {
        std::optional<Lottery> y = PairwiseBlock(env, j, theta, theta_prime, lower_kind);
        if (y.has_value()) record.qualifying.push_back({j, {{theta, *y}}});
      }
      if (record.qualifying.empty()) {
        report.holds = false;
        report.counterexamples.push_back(std::move(record));
      } else {
        report.witnesses.push_back(std::move(record));
      }
    }
  }
  return report;
}

// Does `agent` have a per-state blocking plan against every report in
// `block`, profitable at true_state? Benchmark is f on the block.
std::optional<std::vector<PlanEntry>> StateContingentPlan(const Environment& env, int agent,
                                                          const std::vector<int>& block,
                                                          int true_state) {
  std::vector<PlanEntry> plan;
  for (int reported : block) {
    const Lottery benchmark = ScfLottery(env, reported);
    std::optional<Lottery> y =
        FindBlockingPlan(env, agent,
                         {{reported, ContourKind::kStrictLower, benchmark},
                          {true_state, ContourKind::kStrictUpper, benchmark}});
    if (!y.has_value()) return std::nullopt;
    plan.push_back({reported, *y});
  }
  return plan;
}

// Common lottery blocking all of `block` simultaneously (the * variant).
std::optional<Lottery> CommonPlan(const Environment& env, int agent,
                                  const std::vector<int>& block, int true_state) {
  std::vector<ContourRequirement> requirements;
  const Lottery benchmark = ScfLottery(env, block[0]);  // f constant on the block
  for (int reported : block) {
    requirements.push_back({reported, ContourKind::kStrictLower, benchmark});
  }
  requirements.push_back({true_state, ContourKind::kStrictUpper, benchmark});
  return FindBlockingPlan(env, agent, requirements);
}

enum class StarVariant { kCommonPlan, kStateContingent };

// Obligation sweep for one candidate partition of the * / ** axioms.
// Returns false on the first failing obligation when `collect` is null;
// otherwise fills witnesses/counterexamples with all qualifying agents.
bool SweepPartitionObligations(const Environment& env, const Partition& partition,
                               StarVariant variant, AxiomReport* collect) {
  bool ok = true;
  for (const auto& block : partition.blocks()) {
    for (int true_state = 0; true_state < env.NumStates(); ++true_state) {
      if (Contains(block, true_state)) continue;
      ObligationRecord record;
      record.reported_block = block;
      record.true_state = true_state;
      for (int agent = 0; agent < env.NumAgents(); ++agent) {
        if (variant == StarVariant::kCommonPlan) {
          std::optional<Lottery> y = CommonPlan(env, agent, block, true_state);
          if (y.has_value()) {
            std::vector<PlanEntry> plan;
            for (int reported : block) plan.push_back({reported, *y});
            record.qualifying.push_back({agent, std::move(plan)});
          }
        } else {
          std::optional<std::vector<PlanEntry>> plan =
              StateContingentPlan(env, agent, block, true_state);
          if (plan.has_value()) record.qualifying.push_back({agent, std::move(*plan)});
        }
        if (!record.qualifying.empty() && collect == nullptr) break;
      }
      if (record.qualifying.empty()) {
        ok = false;
        if (collect == nullptr) return false;
        collect->counterexamples.push_back(std::move(record));
      } else if (collect != nullptr) {
        collect->witnesses.push_back(std::move(record));
      }
    }
  }
  return ok;
}

AxiomReport CheckStarVariant(const Environment& env, const std::string& id, StarVariant variant) {
  AxiomReport report;
  report.axiom = id;
  const std::vector<Partition> candidates = EnumerateRefinements(ScfPartition(env));
  for (const Partition& candidate : candidates) {
    if (SweepPartitionObligations(env, candidate, variant, nullptr)) {
      report.holds = true;
      report.partition = candidate;
      SweepPartitionObligations(env, candidate, variant, &report);
      return report;
    }
  }
  // No refinement works; report the failing obligations of the coarsest
  // candidate (P_f itself) so a human can check them against the source.
  report.holds = false;
  SweepPartitionObligations(env, candidates.front(), variant, &report);
  report.witnesses.clear();
  return report;
}

}  // namespace

AxiomReport CheckNwa(const Environment& env) {
  AxiomReport report;
  report.axiom = "nwa";
  report.holds = true;
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int s = 0; s < env.NumStates(); ++s) {
      const int chosen = env.scf[s];
      int worse = -1;
      for (int z = 0; z < env.NumOutcomes(); ++z) {
        if (env.utility[i][s][chosen] > env.utility[i][s][z]) {
          worse = z;
          break;
        }
      }
      ObligationRecord record;
      record.agent = i;
      record.state = s;
      if (worse == -1) {
        report.holds = false;
        report.counterexamples.push_back(std::move(record));
      } else {
        record.qualifying.push_back({i, {{s, Lottery::Degenerate(worse, env.NumOutcomes())}}});
        report.witnesses.push_back(std::move(record));
      }
    }
  }
  return report;
}

AxiomReport CheckResponsiveness(const Environment& env) {
  AxiomReport report;
  report.axiom = "responsiveness";
  report.holds = true;
  for (int s = 0; s < env.NumStates(); ++s) {
    for (int t = s + 1; t < env.NumStates(); ++t) {
      if (env.scf[s] == env.scf[t]) {
        report.holds = false;
        ObligationRecord record;
        record.state = s;
        record.true_state = t;
        report.counterexamples.push_back(std::move(record));
      }
    }
  }
  return report;
}

AxiomReport CheckMaskinMonotonicity(const Environment& env) {
  return CheckMaskinLike(env, "maskin", ContourKind::kWeakLower);
}

AxiomReport CheckStrictMaskin(const Environment& env) {
  return CheckMaskinLike(env, "strict-maskin", ContourKind::kStrictLower);
}

AxiomReport CheckNoVeto(const Environment& env) {
  AxiomReport report;
  report.axiom = "no-veto";
  report.holds = true;
  for (int s = 0; s < env.NumStates(); ++s) {
    for (int z = 0; z < env.NumOutcomes(); ++z) {
      int top_count = 0;
      for (int i = 0; i < env.NumAgents(); ++i) {
        bool is_top = true;
        for (int other = 0; other < env.NumOutcomes(); ++other) {
          if (env.utility[i][s][other] > env.utility[i][s][z]) {
            is_top = false;
            break;
          }
        }
        if (is_top) ++top_count;
      }
      if (top_count < env.NumAgents() - 1) continue;
      ObligationRecord record;
      record.state = s;
      record.outcome = z;
      if (env.scf[s] == z) {
        report.witnesses.push_back(std::move(record));
      } else {
        report.holds = false;
        report.counterexamples.push_back(std::move(record));
      }
    }
  }
  return report;
}

AxiomReport CheckStrictMaskinStar(const Environment& env) {
  return CheckStarVariant(env, "smm-star", StarVariant::kCommonPlan);
}

AxiomReport CheckStrictMaskinStarStar(const Environment& env) {
  return CheckStarVariant(env, "smm-star-star", StarVariant::kStateContingent);
}

AxiomReport CheckStrictEventMonotonicity(const Environment& env) {
  AxiomReport report;
  report.axiom = "strict-event";
  report.holds = true;
  const ActiveSets active(env);
  for (const auto& event : AllEvents(env)) {
    // f(E) as a set.
    std::vector<int> image;
    for (int s : event) image.push_back(env.scf[s]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (int true_state = 0; true_state < env.NumStates(); ++true_state) {
      if (image.size() == 1 && image[0] == env.scf[true_state]) continue;
      ObligationRecord record;
      record.event = event;
      record.true_state = true_state;
      const std::vector<int>& eligible = active.AtEvent(event);
      bool discharged = false;
      for (int reported : event) {
        for (int agent : eligible) {
          const Lottery benchmark = ScfLottery(env, reported);
          std::optional<Lottery> y =
              FindBlockingPlan(env, agent,
                               {{reported, ContourKind::kStrictLower, benchmark},
                                {true_state, ContourKind::kStrictUpper, benchmark}});
          if (y.has_value()) {
            record.qualifying.push_back({agent, {{reported, *y}}});
            discharged = true;
            break;
          }
        }
        if (discharged) break;
      }
      if (discharged) {
        report.witnesses.push_back(std::move(record));
      } else {
        report.holds = false;
        report.counterexamples.push_back(std::move(record));
      }
    }
  }
  return report;
}

AxiomReport CheckDictatorMonotonicity(const Environment& env) {
  AxiomReport report;
  report.axiom = "dictator";
  report.holds = true;
  const ActiveSets active(env);
  for (int theta = 0; theta < env.NumStates(); ++theta) {
    const std::vector<int>& dictators = active.AtState(theta);
    if (dictators.size() != 1) continue;
    const int agent = dictators[0];
    for (int theta_prime = 0; theta_prime < env.NumStates(); ++theta_prime) {
      if (env.scf[theta] == env.scf[theta_prime]) continue;
      for (int theta_second = 0; theta_second < env.NumStates(); ++theta_second) {
        ObligationRecord record;
        record.agent = agent;
        record.state = theta;
        record.true_state = theta_prime;
        record.credibility_state = theta_second;
        std::optional<Lottery> y = FindBlockingPlan(
            env, agent,
            {{theta_second, ContourKind::kWeakLower, ScfLottery(env, theta_second)},
             {theta_prime, ContourKind::kStrictUpper, ScfLottery(env, theta)}});
        if (y.has_value()) {
          record.qualifying.push_back({agent, {{theta_second, *y}}});
          report.witnesses.push_back(std::move(record));
        } else {
          report.holds = false;
          report.counterexamples.push_back(std::move(record));
        }
      }
    }
  }
  return report;
}

std::optional<EliminationOrder> CheckStrictIteratedElimination(const Environment& env,
                                                               int true_state) {
  EliminationOrder order;
  order.final_state = true_state;
  std::vector<int> remaining;
  for (int s = 0; s < env.NumStates(); ++s) remaining.push_back(s);
  while (remaining.size() > 1) {
    const std::vector<int> eligible = ActiveAgentsEvent(env, remaining);
    int deleted = -1;
    for (int candidate : remaining) {
      if (candidate == true_state) continue;
      for (int agent : eligible) {
        std::optional<Lottery> y =
            PairwiseBlock(env, agent, candidate, true_state, ContourKind::kStrictLower);
        if (y.has_value()) {
          order.steps.push_back({candidate, agent, *y});
          deleted = candidate;
          break;
        }
      }
      if (deleted != -1) break;
    }
    if (deleted == -1) return std::nullopt;
    remaining.erase(std::find(remaining.begin(), remaining.end(), deleted));
  }
  return order;
}

AxiomReport CheckStrictIteratedEliminationAll(const Environment& env) {
  AxiomReport report;
  report.axiom = "iterated-elimination";
  report.holds = true;
  for (int s = 0; s < env.NumStates(); ++s) {
    std::optional<EliminationOrder> order = CheckStrictIteratedElimination(env, s);
    if (!order.has_value()) {
      report.holds = false;
      ObligationRecord record;
      record.true_state = s;
      report.counterexamples.push_back(std::move(record));
    }
    report.eliminations[s] = std::move(order);
  }
  return report;
}

namespace {

bool SweepEventStarObligations(const Environment& env, const Partition& partition,
                               const ActiveSets& active, AxiomReport* collect) {
  bool ok = true;
  // Part 1: event condition over unions of reported blocks.
  for (const auto& event : AllEvents(env)) {
    std::vector<int> union_states;
    for (int s : event) {
      const auto& block = partition.BlockOf(s);
      union_states.insert(union_states.end(), block.begin(), block.end());
    }
    std::sort(union_states.begin(), union_states.end());
    union_states.erase(std::unique(union_states.begin(), union_states.end()),
                       union_states.end());
    for (int true_state = 0; true_state < env.NumStates(); ++true_state) {
      if (union_states == partition.BlockOf(true_state)) continue;
      ObligationRecord record;
      record.event = event;
      record.true_state = true_state;
      record.reported_block = union_states;
      const std::vector<int>& eligible = active.AtEvent(union_states);
      bool discharged = false;
      for (int theta : event) {
        for (int agent : eligible) {
          std::optional<std::vector<PlanEntry>> plan =
              StateContingentPlan(env, agent, partition.BlockOf(theta), true_state);
          if (plan.has_value()) {
            record.qualifying.push_back({agent, std::move(*plan)});
            discharged = true;
            break;
          }
        }
        if (discharged) break;
      }
      if (!discharged) {
        ok = false;
        if (collect == nullptr) return false;
        collect->counterexamples.push_back(std::move(record));
      } else if (collect != nullptr) {
        collect->witnesses.push_back(std::move(record));
      }
    }
  }
  // Part 2: partition-level dictator monotonicity.
  for (const auto& block : partition.blocks()) {
    const std::vector<int>& block_active = active.AtEvent(block);
    if (block_active.size() != 1) continue;
    const int agent = block_active[0];
    for (int theta_prime = 0; theta_prime < env.NumStates(); ++theta_prime) {
      if (Contains(block, theta_prime)) continue;
      for (int theta_second = 0; theta_second < env.NumStates(); ++theta_second) {
        ObligationRecord record;
        record.agent = agent;
        record.reported_block = block;
        record.true_state = theta_prime;
        record.credibility_state = theta_second;
        std::optional<Lottery> y = FindBlockingPlan(
            env, agent,
            {{theta_second, ContourKind::kWeakLower, ScfLottery(env, theta_second)},
             {theta_prime, ContourKind::kStrictUpper, ScfLottery(env, block[0])}});
        if (y.has_value()) {
          record.qualifying.push_back({agent, {{theta_second, *y}}});
          if (collect != nullptr) collect->witnesses.push_back(std::move(record));
        } else {
          ok = false;
          if (collect == nullptr) return false;
          collect->counterexamples.push_back(std::move(record));
        }
      }
    }
  }
  return ok;
}

}  // namespace

AxiomReport CheckStrictEventStarStar(const Environment& env) {
  AxiomReport report;
  report.axiom = "sem-star-star";
  const ActiveSets active(env);
  const std::vector<Partition> candidates = EnumerateRefinements(ScfPartition(env));
  for (const Partition& candidate : candidates) {
    if (SweepEventStarObligations(env, candidate, active, nullptr)) {
      report.holds = true;
      report.partition = candidate;
      SweepEventStarObligations(env, candidate, active, &report);
      return report;
    }
  }
  report.holds = false;
  SweepEventStarObligations(env, candidates.front(), active, &report);
  report.witnesses.clear();
  return report;
}

std::vector<std::string> AxiomIds() {
  return {"nwa",           "responsiveness", "maskin",       "no-veto",
          "strict-maskin", "smm-star",       "smm-star-star", "strict-event",
          "dictator",      "iterated-elimination", "sem-star-star"};
}

bool IsAxiomId(const std::string& id) {
  const auto ids = AxiomIds();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

AxiomReport RunAxiom(const Environment& env, const std::string& id) {
  if (id == "nwa") return CheckNwa(env);
  if (id == "responsiveness") return CheckResponsiveness(env);
  if (id == "maskin") return CheckMaskinMonotonicity(env);
  if (id == "no-veto") return CheckNoVeto(env);
  if (id == "strict-maskin") return CheckStrictMaskin(env);
  if (id == "smm-star") return CheckStrictMaskinStar(env);
  if (id == "smm-star-star") return CheckStrictMaskinStarStar(env);
  if (id == "strict-event") return CheckStrictEventMonotonicity(env);
  if (id == "dictator") return CheckDictatorMonotonicity(env);
  if (id == "iterated-elimination") return CheckStrictIteratedEliminationAll(env);
  if (id == "sem-star-star") return CheckStrictEventStarStar(env);
  throw std::invalid_argument("unknown axiom id: " + id);
}

}  // namespace ratimpl

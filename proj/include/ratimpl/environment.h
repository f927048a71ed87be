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

#ifndef RATIMPL_ENVIRONMENT_H_
#define RATIMPL_ENVIRONMENT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratimpl/partition.h"
#include "ratimpl/rational.h"

namespace ratimpl {

// A lottery over the outcome set: exact probabilities, indexed by outcome
// position in the environment's outcome list. Entries are >= 0 and sum to 1.
struct Lottery {
  std::vector<Rational> probs;

  static Lottery Degenerate(int outcome, int num_outcomes);
  bool IsValid() const;
  bool IsDegenerate(int outcome) const;
  bool operator==(const Lottery& other) const { return probs == other.probs; }
  bool operator<(const Lottery& other) const { return probs < other.probs; }
};

// Convex combination weight*a + (1-weight)*b, exact.
Lottery MixLotteries(const Rational& weight, const Lottery& a, const Lottery& b);

enum class Validation { kLenient, kStrict };

// A finite implementation environment: agents I, states Theta, outcomes Z,
// a per-agent Bernoulli utility table over pure outcomes, and the social
// choice function f. All derived quantities (expected utility over lotteries,
// contour membership, active agents) are computed from this table on demand.
class Environment {
 public:
  std::vector<std::string> agents;
  std::vector<std::string> states;
  std::vector<std::string> outcomes;
  std::vector<int> scf;  // state index -> outcome index
  // utility[agent][state][outcome]
  std::vector<std::vector<std::vector<Rational>>> utility;
  std::string name;
  std::string notes;

  int NumAgents() const { return static_cast<int>(agents.size()); }
  int NumStates() const { return static_cast<int>(states.size()); }
  int NumOutcomes() const { return static_cast<int>(outcomes.size()); }

  int AgentIndex(const std::string& id) const;
  int StateIndex(const std::string& id) const;
  int OutcomeIndex(const std::string& id) const;

  const Rational& PayoffPure(int agent, int outcome, int state) const {
    return utility[agent][state][outcome];
  }

  // Structural validation. Lenient requires a well-formed total table;
  // strict additionally requires |I| >= 3 and |f(Theta)| >= 2 (what mechanism
  // construction assumes). Returns human-readable problems, empty if fine.
  std::vector<std::string> Validate(Validation level) const;
};

// Parses the environment file format:
//   {"agents":[...], "states":[...], "outcomes":[...],
//    "scf":{state:outcome,...},
//    "utilities":{agent:{state:{outcome:"p/q"|int,...},...},...}}
// Throws std::invalid_argument with a description on malformed input or when
// Validate(level) reports problems.
Environment ParseEnvironment(const std::string& text, Validation level = Validation::kLenient);
Environment LoadEnvironmentFile(const std::string& path, Validation level = Validation::kLenient);
std::string EnvironmentToJson(const Environment& env);

// u_i(y, theta) = sum_z y_z u_i(z, theta), exact.
Rational ExpectedUtility(const Environment& env, int agent, const Lottery& y, int state);

enum class ContourKind { kWeakLower, kStrictLower, kStrictUpper };

// A contour set held intensionally: the lotteries weakly worse / strictly
// worse / strictly better than `benchmark` for `agent` at `state`.
struct ContourSpec {
  int agent;
  Lottery benchmark;
  int state;
  ContourKind kind;
};

bool SatisfiesContour(const Environment& env, const ContourSpec& spec, const Lottery& y);

// Active agents I^theta: agents with some outcome strictly worse than
// f(theta) at theta. The event version intersects over E.
std::vector<int> ActiveAgents(const Environment& env, int state);
std::vector<int> ActiveAgentsEvent(const Environment& env, const std::vector<int>& event);

// Per-state active sets plus a cache of event intersections.
class ActiveSets {
 public:
  explicit ActiveSets(const Environment& env);
  const std::vector<int>& AtState(int state) const { return per_state_[state]; }
  const std::vector<int>& AtEvent(const std::vector<int>& event) const;
  const std::vector<std::vector<int>>& PerState() const { return per_state_; }

 private:
  std::vector<std::vector<int>> per_state_;
  mutable std::map<std::vector<int>, std::vector<int>> event_cache_;
};

// P_f: states grouped by equal f-value.
Partition ScfPartition(const Environment& env);

// The unique outcome beating every other by strict pairwise majority at
// `state`, if one exists.
std::optional<int> CondorcetWinner(const Environment& env, int state);
bool IsCondorcetFunction(const Environment& env);

}  // namespace ratimpl

#endif  // RATIMPL_ENVIRONMENT_H_

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

#ifndef RATIMPL_GAME_H_
#define RATIMPL_GAME_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ratimpl/environment.h"
#include "ratimpl/mechanism.h"

namespace ratimpl {

inline constexpr std::uint64_t kDefaultProfileCap = 1000000;

// Reads RATIMPL_PROFILE_CAP when set, otherwise the default.
std::uint64_t ProfileCapFromEnv();

// A finite normal-form game. Payoffs come either from outcome lotteries
// evaluated in an environment at a bound state (mechanism-style games), or
// from raw per-player tensors. Profiles are flattened row-major with the last
// player varying fastest.
struct FiniteGame {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> strategies;

  // Mechanism-style payoffs: outcome lottery per profile, utilities from env.
  std::vector<Lottery> outcomes;
  std::shared_ptr<const Environment> env;
  int state = -1;

  // Raw payoffs per player per profile (used when env is null).
  std::vector<std::vector<Rational>> raw_payoffs;

  int NumPlayers() const { return static_cast<int>(players.size()); }
  int NumStrategies(int player) const { return static_cast<int>(strategies[player].size()); }
  std::uint64_t NumProfiles() const;
  std::uint64_t Flatten(const std::vector<int>& profile) const;
  std::vector<int> Unflatten(std::uint64_t index) const;

  // Per-player expected payoff table for the bound state (or raw).
  std::vector<std::vector<Rational>> PayoffTables() const;
};

// A correlated belief over opponent profiles, keyed by the flat index of the
// opponent sub-profile in the full opponent space (row-major over the other
// players in order).
struct BeliefWitness {
  std::vector<std::pair<std::uint64_t, Rational>> distribution;
};

struct EliminationEvent {
  int round = 0;
  int player = 0;
  int strategy = 0;
};

struct SurvivorSets {
  std::vector<std::vector<int>> surviving;  // sorted strategy indices per player
  std::vector<EliminationEvent> trace;
  std::vector<std::map<int, BeliefWitness>> witnesses;  // per player, per surviving strategy
};

// LP feasibility of the best-reply condition: a belief with support inside
// the opponents' survivor product making `strategy` weakly best among the
// player's FULL strategy set. Deterministic witness; nullopt when none.
std::optional<BeliefWitness> BestReplyWitness(const FiniteGame& game, int player, int strategy,
                                              const SurvivorSets& survivors);

// Iterated elimination of never-best replies, all witness-less strategies
// removed each round, until the largest fixed point is reached. Verifies
// S = b(S) before returning. Throws when the profile space exceeds the cap.
SurvivorSets SolveRationalizable(const FiniteGame& game,
                                 std::uint64_t profile_cap = ProfileCapFromEnv());

// Test-oracle side of the Pearce duality: is `strategy` strictly dominated by
// some mixed strategy over the full strategy set against every surviving
// opponent profile?
bool IsStrictlyDominated(const FiniteGame& game, int player, int strategy,
                         const SurvivorSets& survivors);

// Exact re-verification of a returned witness.
bool VerifyBeliefWitness(const FiniteGame& game, int player, int strategy,
                         const BeliefWitness& witness, const SurvivorSets& survivors);

// A family of games sharing one message space and outcome map, differing only
// in the payoff state.
struct GameFamily {
  FiniteGame base;          // env-bound game; `state` is rebound per solve
  std::vector<int> states;  // the states to check
};

struct ImplementationCheck {
  std::vector<int> states;
  std::vector<bool> per_state;
  bool overall = false;
  std::vector<SurvivorSets> survivors;                 // per state
  std::vector<std::vector<std::uint64_t>> offending;   // surviving profiles with wrong outcomes
};

// Definition-1 check: at every state, every surviving profile's outcome is
// the degenerate lottery on f(state).
ImplementationCheck CheckImplementation(const GameFamily& family,
                                        std::uint64_t profile_cap = ProfileCapFromEnv());

struct LemmaPropertiesReport {
  bool applicable = false;   // both lemmas are stated for implementing mechanisms
  bool inclusion_equality = true;   // survivor-set inclusion across states forces equality
  bool inactive_unconstrained = true;  // inactive agents keep all strategies, outcome constant
  std::vector<std::string> details;
};

LemmaPropertiesReport CheckLemmaProperties(const GameFamily& family,
                                           const ImplementationCheck& check);

// Bridges a canonical mechanism into a finite game family by truncating the
// integer dimension at the mechanism's bound and restricting plans to
// constant maps over a chosen subset of the Sigma menu. The truncated game is
// a solver artifact: certificates reason about the untruncated mechanism.
struct BridgeOptions {
  std::vector<int> sigma_indices;  // Sigma entries usable as constant plans
};
GameFamily MechanismToGame(const CanonicalMechanism& mech, const BridgeOptions& options);

// Game file parsing (see README for the schema). `base_dir` resolves a
// relative environment reference.
GameFamily ParseGameFile(const std::string& text, const std::string& base_dir);
GameFamily LoadGameFile(const std::string& path);

}  // namespace ratimpl

#endif  // RATIMPL_GAME_H_

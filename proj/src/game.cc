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

#include "ratimpl/game.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ratimpl/lp.h"

namespace ratimpl {

std::uint64_t ProfileCapFromEnv() {
  const char* raw = std::getenv("RATIMPL_PROFILE_CAP");
  if (raw == nullptr) return kDefaultProfileCap;
  const long long parsed = std::atoll(raw);
  if (parsed <= 0) return kDefaultProfileCap;
  return static_cast<std::uint64_t>(parsed);
}

std::uint64_t FiniteGame::NumProfiles() const {
  std::uint64_t total = 1;
  for (int p = 0; p < NumPlayers(); ++p) total *= NumStrategies(p);
  return total;
}

std::uint64_t FiniteGame::Flatten(const std::vector<int>& profile) const {
  std::uint64_t index = 0;
  for (int p = 0; p < NumPlayers(); ++p) index = index * NumStrategies(p) + profile[p];
  return index;
}

std::vector<int> FiniteGame::Unflatten(std::uint64_t index) const {
  std::vector<int> profile(NumPlayers());
  for (int p = NumPlayers() - 1; p >= 0; --p) {
    profile[p] = static_cast<int>(index % NumStrategies(p));
    index /= NumStrategies(p);
  }
  return profile;
}

std::vector<std::vector<Rational>> FiniteGame::PayoffTables() const {
  if (env == nullptr) return raw_payoffs;
  const std::uint64_t total = NumProfiles();
  std::vector<std::vector<Rational>> tables(NumPlayers(), std::vector<Rational>(total));
  for (std::uint64_t p = 0; p < total; ++p) {
    for (int i = 0; i < NumPlayers(); ++i) {
      tables[i][p] = ExpectedUtility(*env, i, outcomes[p], state);
    }
  }
  return tables;
}

namespace {

// Enumeration of opponent sub-profiles and their flat indices in the full
// opponent space (row-major over players other than `player`).
class OpponentSpace {
 public:
  OpponentSpace(const FiniteGame& game, int player) : game_(game), player_(player) {
    for (int p = 0; p < game.NumPlayers(); ++p) {
      if (p != player) others_.push_back(p);
    }
  }

  std::uint64_t Flatten(const std::vector<int>& sub) const {
    std::uint64_t index = 0;
    for (size_t k = 0; k < others_.size(); ++k) {
      index = index * game_.NumStrategies(others_[k]) + sub[k];
    }
    return index;
  }

  // Full-game profile index for (own strategy, opponent sub-profile).
  std::uint64_t FullIndex(int own, const std::vector<int>& sub) const {
    std::vector<int> profile(game_.NumPlayers());
    profile[player_] = own;
    for (size_t k = 0; k < others_.size(); ++k) profile[others_[k]] = sub[k];
    return game_.Flatten(profile);
  }

  // All sub-profiles drawn from the survivor sets, in lexicographic order.
  std::vector<std::vector<int>> Enumerate(const std::vector<std::vector<int>>& surviving) const {
    std::vector<std::vector<int>> result;
    std::vector<size_t> pos(others_.size(), 0);
    if (others_.empty()) {
      result.push_back({});
      return result;
    }
    for (int p : others_) {
      if (surviving[p].empty()) return result;
    }
    while (true) {
      std::vector<int> sub(others_.size());
      for (size_t k = 0; k < others_.size(); ++k) sub[k] = surviving[others_[k]][pos[k]];
      result.push_back(std::move(sub));
      int k = static_cast<int>(others_.size()) - 1;
      while (k >= 0) {
        if (++pos[k] < surviving[others_[k]].size()) break;
        pos[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
    return result;
  }

  const std::vector<int>& others() const { return others_; }

 private:
  const FiniteGame& game_;
  int player_;
  std::vector<int> others_;
};

struct ColumnSet {
  // Deduplicated payoff columns: value[c][t] is the payoff of own strategy t
  // against column c. Representative keeps the first opponent sub-profile.
  std::vector<std::vector<Rational>> values;
  std::vector<std::uint64_t> representative;
};

ColumnSet BuildColumns(const FiniteGame& game, const std::vector<std::vector<Rational>>& payoff,
                       int player, const OpponentSpace& space,
                       const std::vector<std::vector<int>>& surviving) {
  ColumnSet columns;
  std::map<std::vector<Rational>, size_t> seen;
  for (const auto& sub : space.Enumerate(surviving)) {
    std::vector<Rational> column(game.NumStrategies(player));
    for (int t = 0; t < game.NumStrategies(player); ++t) {
      column[t] = payoff[player][space.FullIndex(t, sub)];
    }
    if (seen.emplace(column, columns.values.size()).second) {
      columns.representative.push_back(space.Flatten(sub));
      columns.values.push_back(std::move(column));
    }
  }
  return columns;
}

std::optional<BeliefWitness> WitnessFromColumns(const FiniteGame& game, int player, int strategy,
                                                const ColumnSet& columns) {
  const int num_strategies = game.NumStrategies(player);
  const int num_columns = static_cast<int>(columns.values.size());
  if (num_columns == 0) return std::nullopt;

  // Point beliefs first: any column where `strategy` already attains the max.
  for (int c = 0; c < num_columns; ++c) {
    bool best = true;
    for (int t = 0; t < num_strategies && best; ++t) {
      best = columns.values[c][strategy] >= columns.values[c][t];
    }
    if (best) {
      BeliefWitness witness;
      witness.distribution.push_back({columns.representative[c], Rational(1)});
      return witness;
    }
  }

  // Otherwise the belief LP: lambda over columns, strategy weakly best
  // against every alternative in the full strategy set.
  DenseLp lp;
  lp.num_vars = num_columns;
  lp.eq_a.push_back(std::vector<Rational>(num_columns, Rational(1)));
  lp.eq_b.push_back(Rational(1));
  for (int t = 0; t < num_strategies; ++t) {
    if (t == strategy) continue;
    std::vector<Rational> row(num_columns);
    bool all_zero = true;
    for (int c = 0; c < num_columns; ++c) {
      row[c] = columns.values[c][t] - columns.values[c][strategy];
      all_zero = all_zero && row[c] == 0;
    }
    if (all_zero) continue;
    lp.le_a.push_back(std::move(row));
    lp.le_b.push_back(Rational(0));
  }
  std::optional<std::vector<Rational>> point = LexMinFeasiblePoint(lp);
  if (!point.has_value()) return std::nullopt;
  BeliefWitness witness;
  for (int c = 0; c < num_columns; ++c) {
    if ((*point)[c] != 0) witness.distribution.push_back({columns.representative[c], (*point)[c]});
  }
  return witness;
}

void CheckCap(const FiniteGame& game, std::uint64_t profile_cap) {
  std::uint64_t total = 1;
  for (int p = 0; p < game.NumPlayers(); ++p) {
    total *= static_cast<std::uint64_t>(game.NumStrategies(p));
    if (total > profile_cap) {
      throw std::runtime_error("profile space exceeds the cap of " +
                               std::to_string(profile_cap) + " profiles");
    }
  }
}

}  // namespace

std::optional<BeliefWitness> BestReplyWitness(const FiniteGame& game, int player, int strategy,
                                              const SurvivorSets& survivors) {
  const std::vector<std::vector<Rational>> payoff = game.PayoffTables();
  const OpponentSpace space(game, player);
  const ColumnSet columns = BuildColumns(game, payoff, player, space, survivors.surviving);
  return WitnessFromColumns(game, player, strategy, columns);
}

SurvivorSets SolveRationalizable(const FiniteGame& game, std::uint64_t profile_cap) {
  CheckCap(game, profile_cap);
  const std::vector<std::vector<Rational>> payoff = game.PayoffTables();

  SurvivorSets sets;
  sets.surviving.resize(game.NumPlayers());
  sets.witnesses.resize(game.NumPlayers());
  for (int p = 0; p < game.NumPlayers(); ++p) {
    for (int s = 0; s < game.NumStrategies(p); ++s) sets.surviving[p].push_back(s);
  }

  std::vector<OpponentSpace> spaces;
  for (int p = 0; p < game.NumPlayers(); ++p) spaces.emplace_back(game, p);

  int round = 1;
  while (true) {
    bool removed_any = false;
    std::vector<std::vector<int>> next = sets.surviving;
    for (int p = 0; p < game.NumPlayers(); ++p) {
      const ColumnSet columns = BuildColumns(game, payoff, p, spaces[p], sets.surviving);
      std::vector<int> keep;
      for (int s : sets.surviving[p]) {
        if (WitnessFromColumns(game, p, s, columns).has_value()) {
          keep.push_back(s);
        } else {
          sets.trace.push_back({round, p, s});
          removed_any = true;
        }
      }
      next[p] = std::move(keep);
    }
    sets.surviving = std::move(next);
    if (!removed_any) break;
    ++round;
  }

  // Fixed-point check and final witnesses: one more best-reply sweep must
  // keep every survivor.
  for (int p = 0; p < game.NumPlayers(); ++p) {
    const ColumnSet columns = BuildColumns(game, payoff, p, spaces[p], sets.surviving);
    for (int s : sets.surviving[p]) {
      std::optional<BeliefWitness> witness = WitnessFromColumns(game, p, s, columns);
      if (!witness.has_value()) throw std::logic_error("survivor set is not a fixed point");
      sets.witnesses[p][s] = std::move(*witness);
    }
  }
  return sets;
}

bool IsStrictlyDominated(const FiniteGame& game, int player, int strategy,
                         const SurvivorSets& survivors) {
  const std::vector<std::vector<Rational>> payoff = game.PayoffTables();
  const OpponentSpace space(game, player);
  const ColumnSet columns = BuildColumns(game, payoff, player, space, survivors.surviving);
  const int num_strategies = game.NumStrategies(player);
  // sigma over the full strategy set with sigma . column > column[strategy]
  // for every surviving column.
  std::vector<LinearConstraint> constraints;
  for (const auto& column : columns.values) {
    LinearConstraint c;
    c.coefficients = column;
    c.relation = Relation::kGt;
    c.bound = column[strategy];
    constraints.push_back(std::move(c));
  }
  return SolveMaxSlack(num_strategies, constraints).status == LpStatus::kFeasible;
}

bool VerifyBeliefWitness(const FiniteGame& game, int player, int strategy,
                         const BeliefWitness& witness, const SurvivorSets& survivors) {
  const std::vector<std::vector<Rational>> payoff = game.PayoffTables();
  const OpponentSpace space(game, player);

  // Support inside the survivor product set and total mass 1.
  Rational total(0);
  for (const auto& [flat, mass] : witness.distribution) {
    if (mass <= 0) return false;
    total += mass;
    std::uint64_t rest = flat;
    const auto& others = space.others();
    for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
      const int s = static_cast<int>(rest % game.NumStrategies(others[k]));
      rest /= game.NumStrategies(others[k]);
      if (!std::binary_search(survivors.surviving[others[k]].begin(),
                              survivors.surviving[others[k]].end(), s)) {
        return false;
      }
    }
  }
  if (total != 1) return false;

  // Best reply against the full strategy set.
  auto expected = [&](int own) {
    Rational value(0);
    for (const auto& [flat, mass] : witness.distribution) {
      std::uint64_t rest = flat;
      const auto& others = space.others();
      std::vector<int> sub(others.size());
      for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
        sub[k] = static_cast<int>(rest % game.NumStrategies(others[k]));
        rest /= game.NumStrategies(others[k]);
      }
      value += mass * payoff[player][space.FullIndex(own, sub)];
    }
    return value;
  };
  const Rational own_value = expected(strategy);
  for (int t = 0; t < game.NumStrategies(player); ++t) {
    if (expected(t) > own_value) return false;
  }
  return true;
}

ImplementationCheck CheckImplementation(const GameFamily& family, std::uint64_t profile_cap) {
  if (family.base.env == nullptr) {
    throw std::invalid_argument("implementation checks need an environment-bound game");
  }
  ImplementationCheck result;
  result.states = family.states;
  result.overall = true;
  for (int state : family.states) {
    FiniteGame game = family.base;
    game.state = state;
    SurvivorSets sets = SolveRationalizable(game, profile_cap);
    const int target = family.base.env->scf[state];

    bool ok = true;
    std::vector<std::uint64_t> offending;
    std::vector<size_t> pos(game.NumPlayers(), 0);
    bool nonempty = true;
    for (int p = 0; p < game.NumPlayers(); ++p) nonempty = nonempty && !sets.surviving[p].empty();
    while (nonempty) {
      std::vector<int> profile(game.NumPlayers());
      for (int p = 0; p < game.NumPlayers(); ++p) profile[p] = sets.surviving[p][pos[p]];
      const std::uint64_t flat = game.Flatten(profile);
      if (!game.outcomes[flat].IsDegenerate(target)) {
        ok = false;
        offending.push_back(flat);
      }
      int k = game.NumPlayers() - 1;
      while (k >= 0) {
        if (++pos[k] < sets.surviving[k].size()) break;
        pos[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
    result.per_state.push_back(ok);
    result.overall = result.overall && ok;
    result.survivors.push_back(std::move(sets));
    result.offending.push_back(std::move(offending));
  }
  return result;
}

LemmaPropertiesReport CheckLemmaProperties(const GameFamily& family,
                                           const ImplementationCheck& check) {
  LemmaPropertiesReport report;
  if (!check.overall) {
    report.applicable = false;
    report.details.push_back("not applicable: the mechanism does not implement f");
    return report;
  }
  report.applicable = true;
  const Environment& env = *family.base.env;
  const FiniteGame& game = family.base;

  // Survivor-set inclusion across states forces equality.
  for (size_t a = 0; a < check.states.size(); ++a) {
    for (size_t b = 0; b < check.states.size(); ++b) {
      if (a == b) continue;
      bool included = true;
      for (int p = 0; p < game.NumPlayers() && included; ++p) {
        included = std::includes(check.survivors[b].surviving[p].begin(),
                                 check.survivors[b].surviving[p].end(),
                                 check.survivors[a].surviving[p].begin(),
                                 check.survivors[a].surviving[p].end());
      }
      if (included && check.survivors[a].surviving != check.survivors[b].surviving) {
        report.inclusion_equality = false;
        report.details.push_back("survivors at " + env.states[check.states[a]] +
                                 " are strictly inside those at " + env.states[check.states[b]]);
      }
    }
  }

  // Inactive agents keep every strategy and never affect the outcome.
  for (size_t k = 0; k < check.states.size(); ++k) {
    const int state = check.states[k];
    const std::vector<int> active = ActiveAgents(env, state);
    const int target = env.scf[state];
    for (int p = 0; p < game.NumPlayers(); ++p) {
      if (std::binary_search(active.begin(), active.end(), p)) continue;
      if (static_cast<int>(check.survivors[k].surviving[p].size()) != game.NumStrategies(p)) {
        report.inactive_unconstrained = false;
        report.details.push_back("inactive agent " + env.agents[p] + " lost strategies at " +
                                 env.states[state]);
      }
      // Outcomes over M_p x S_{-p} all equal f(state).
      const OpponentSpace space(game, p);
      std::vector<std::vector<int>> everyone = check.survivors[k].surviving;
      for (const auto& sub : space.Enumerate(everyone)) {
        for (int own = 0; own < game.NumStrategies(p); ++own) {
          if (!game.outcomes[space.FullIndex(own, sub)].IsDegenerate(target)) {
            report.inactive_unconstrained = false;
            report.details.push_back("outcome depends on inactive agent " + env.agents[p] +
                                     " at " + env.states[state]);
            break;
          }
        }
      }
    }
  }
  return report;
}

GameFamily MechanismToGame(const CanonicalMechanism& mech, const BridgeOptions& options) {
  if (options.sigma_indices.empty()) {
    throw std::invalid_argument("bridge needs at least one Sigma entry for plans");
  }
  for (int index : options.sigma_indices) {
    if (index < 0 || index >= mech.sigma.size()) throw std::out_of_range("Sigma index");
  }
  const Environment& env = mech.env;
  GameFamily family;
  family.base.env = std::make_shared<Environment>(env);
  for (int s = 0; s < env.NumStates(); ++s) family.states.push_back(s);

  // Strategy space: (state, integer, constant plan entry, contest outcome).
  std::vector<Message> decode;
  std::vector<std::string> labels;
  for (int s = 0; s < env.NumStates(); ++s) {
    for (int n = 1; n <= mech.n_max; ++n) {
      for (int plan : options.sigma_indices) {
        for (int z = 0; z < env.NumOutcomes(); ++z) {
          Message m;
          m.state = s;
          m.integer = n;
          m.plan.assign(env.NumStates(), plan);
          m.outcome = z;
          decode.push_back(std::move(m));
          labels.push_back(env.states[s] + "/" + std::to_string(n) + "/sigma" +
                           std::to_string(plan) + "/" + env.outcomes[z]);
        }
      }
    }
  }

  family.base.players = env.agents;
  family.base.strategies.assign(env.NumAgents(), labels);

  const std::uint64_t total = family.base.NumProfiles();
  family.base.outcomes.resize(total);
  std::vector<Message> profile(env.NumAgents());
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    const std::vector<int> indices = family.base.Unflatten(flat);
    for (int p = 0; p < env.NumAgents(); ++p) profile[p] = decode[indices[p]];
    family.base.outcomes[flat] = MechanismOutcome(mech, profile);
  }
  family.base.state = family.states[0];
  return family;
}

namespace {

using nlohmann::json;

Rational JsonRationalValue(const json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) return ParseRational(value.get<std::string>());
  throw std::invalid_argument("rational entries must be integers or \"p/q\" strings");
}

}  // namespace

GameFamily ParseGameFile(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("game file is not valid JSON: ") + e.what());
  }
  GameFamily family;
  FiniteGame& game = family.base;
  game.players = doc.at("players").get<std::vector<std::string>>();
  const json& strategies = doc.at("strategies");
  for (const auto& player : game.players) {
    if (!strategies.contains(player)) {
      throw std::invalid_argument("strategies missing player " + player);
    }
    game.strategies.push_back(strategies.at(player).get<std::vector<std::string>>());
  }
  auto strategy_index = [&](int player, const std::string& label) {
    const auto& list = game.strategies[player];
    const auto it = std::find(list.begin(), list.end(), label);
    if (it == list.end()) {
      throw std::invalid_argument("unknown strategy " + label + " for player " +
                                  game.players[player]);
    }
    return static_cast<int>(it - list.begin());
  };
  auto parse_profile = [&](const json& entry) {
    const auto labels = entry.get<std::vector<std::string>>();
    if (labels.size() != game.players.size()) {
      throw std::invalid_argument("profile arity does not match the player list");
    }
    std::vector<int> profile(labels.size());
    for (size_t p = 0; p < labels.size(); ++p) {
      profile[p] = strategy_index(static_cast<int>(p), labels[p]);
    }
    return profile;
  };

  if (doc.contains("environment")) {
    std::shared_ptr<Environment> env;
    if (doc["environment"].is_string()) {
      std::string path = doc["environment"].get<std::string>();
      if (!path.empty() && path[0] != '/' && !base_dir.empty()) path = base_dir + "/" + path;
      env = std::make_shared<Environment>(LoadEnvironmentFile(path));
    } else {
      env = std::make_shared<Environment>(
          ParseEnvironment(doc["environment"].dump(), Validation::kLenient));
    }
    if (game.players != env->agents) {
      throw std::invalid_argument("game players must match the environment's agents");
    }
    game.env = env;
    if (doc.contains("states")) {
      for (const auto& s : doc.at("states")) family.states.push_back(env->StateIndex(s));
    } else {
      family.states.push_back(env->StateIndex(doc.at("state").get<std::string>()));
    }
    game.state = family.states[0];
    game.outcomes.assign(game.NumProfiles(), Lottery());
    std::vector<bool> seen(game.NumProfiles(), false);
    for (const auto& entry : doc.at("outcomes")) {
      const std::uint64_t flat = game.Flatten(parse_profile(entry.at("profile")));
      Lottery lottery;
      lottery.probs.assign(env->NumOutcomes(), Rational(0));
      for (const auto& [key, value] : entry.at("lottery").items()) {
        lottery.probs[env->OutcomeIndex(key)] = JsonRationalValue(value);
      }
      if (!lottery.IsValid()) throw std::invalid_argument("outcome lottery is not a distribution");
      game.outcomes[flat] = std::move(lottery);
      seen[flat] = true;
    }
    for (std::uint64_t flat = 0; flat < game.NumProfiles(); ++flat) {
      if (!seen[flat]) throw std::invalid_argument("outcome map is not total over profiles");
    }
    return family;
  }

  // Raw payoff tensors.
  game.raw_payoffs.assign(game.players.size(), std::vector<Rational>(game.NumProfiles()));
  std::vector<bool> seen(game.NumProfiles(), false);
  for (const auto& entry : doc.at("payoffs")) {
    const std::uint64_t flat = game.Flatten(parse_profile(entry.at("profile")));
    const json& values = entry.at("values");
    for (size_t p = 0; p < game.players.size(); ++p) {
      if (!values.contains(game.players[p])) {
        throw std::invalid_argument("payoff entry missing player " + game.players[p]);
      }
      game.raw_payoffs[p][flat] = JsonRationalValue(values.at(game.players[p]));
    }
    seen[flat] = true;
  }
  for (std::uint64_t flat = 0; flat < game.NumProfiles(); ++flat) {
    if (!seen[flat]) throw std::invalid_argument("payoff map is not total over profiles");
  }
  return family;
}

GameFamily LoadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open game file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string base_dir;
  const size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) base_dir = path.substr(0, slash);
  return ParseGameFile(buffer.str(), base_dir);
}

}  // namespace ratimpl

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

#include "ratimpl/environment.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ratimpl {

Lottery Lottery::Degenerate(int outcome, int num_outcomes) {
  Lottery y;
  y.probs.assign(num_outcomes, Rational(0));
  y.probs[outcome] = 1;
  return y;
}

bool Lottery::IsValid() const {
  Rational total(0);
  for (const Rational& p : probs) {
    if (p < 0) return false;
    total += p;
  }
  return total == 1;
}

bool Lottery::IsDegenerate(int outcome) const {
  return probs[outcome] == 1;
}

Lottery MixLotteries(const Rational& weight, const Lottery& a, const Lottery& b) {
  Lottery y;
  y.probs.resize(a.probs.size());
  const Rational rest = Rational(1) - weight;
  for (size_t z = 0; z < a.probs.size(); ++z) {
    y.probs[z] = weight * a.probs[z] + rest * b.probs[z];
  }
  return y;
}

namespace {

int IndexOf(const std::vector<std::string>& ids, const std::string& id, const char* what) {
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return static_cast<int>(i);
  }
  throw std::out_of_range(std::string("unknown ") + what + ": " + id);
}

}  // namespace

int Environment::AgentIndex(const std::string& id) const { return IndexOf(agents, id, "agent"); }
int Environment::StateIndex(const std::string& id) const { return IndexOf(states, id, "state"); }
int Environment::OutcomeIndex(const std::string& id) const { return IndexOf(outcomes, id, "outcome"); }

std::vector<std::string> Environment::Validate(Validation level) const {
  std::vector<std::string> problems;
  auto check_unique = [&](const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids) {
      if (!seen.insert(id).second) problems.push_back(std::string("duplicate ") + what + " id: " + id);
    }
  };
  check_unique(agents, "agent");
  check_unique(states, "state");
  check_unique(outcomes, "outcome");
  if (agents.empty()) problems.push_back("no agents");
  if (states.empty()) problems.push_back("no states");
  if (outcomes.empty()) problems.push_back("no outcomes");
  if (static_cast<int>(scf.size()) != NumStates()) {
    problems.push_back("scf is not total over the state set");
  } else {
    for (int s = 0; s < NumStates(); ++s) {
      if (scf[s] < 0 || scf[s] >= NumOutcomes()) {
        problems.push_back("scf maps " + states[s] + " to an unknown outcome");
      }
    }
  }
  if (static_cast<int>(utility.size()) != NumAgents()) {
    problems.push_back("utility table missing agents");
  } else {
    for (int i = 0; i < NumAgents(); ++i) {
      if (static_cast<int>(utility[i].size()) != NumStates()) {
        problems.push_back("utility table for " + agents[i] + " missing states");
        continue;
      }
      for (int s = 0; s < NumStates(); ++s) {
        if (static_cast<int>(utility[i][s].size()) != NumOutcomes()) {
          problems.push_back("utility entry missing for agent " + agents[i] + " at " + states[s]);
        }
      }
    }
  }
  if (level == Validation::kStrict) {
    if (NumAgents() < 3) problems.push_back("strict validation: fewer than 3 agents");
    std::set<int> image(scf.begin(), scf.end());
    if (image.size() < 2) problems.push_back("strict validation: |f(Theta)| < 2");
  }
  return problems;
}

namespace {

using nlohmann::json;

Rational JsonRational(const json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) return ParseRational(value.get<std::string>());
  throw std::invalid_argument("utility entries must be integers or \"p/q\" strings");
}

}  // namespace

Environment ParseEnvironment(const std::string& text, Validation level) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("environment file is not valid JSON: ") + e.what());
  }
  Environment env;
  try {
    env.agents = doc.at("agents").get<std::vector<std::string>>();
    env.states = doc.at("states").get<std::vector<std::string>>();
    env.outcomes = doc.at("outcomes").get<std::vector<std::string>>();
    if (doc.contains("name")) env.name = doc["name"].get<std::string>();
    if (doc.contains("notes")) env.notes = doc["notes"].get<std::string>();

    const json& scf = doc.at("scf");
    env.scf.assign(env.states.size(), -1);
    for (size_t s = 0; s < env.states.size(); ++s) {
      if (!scf.contains(env.states[s])) {
        throw std::invalid_argument("scf missing state " + env.states[s]);
      }
      env.scf[s] = env.OutcomeIndex(scf.at(env.states[s]).get<std::string>());
    }

    const json& utilities = doc.at("utilities");
    env.utility.resize(env.agents.size());
    for (size_t i = 0; i < env.agents.size(); ++i) {
      if (!utilities.contains(env.agents[i])) {
        throw std::invalid_argument("utilities missing agent " + env.agents[i]);
      }
      const json& per_state = utilities.at(env.agents[i]);
      env.utility[i].resize(env.states.size());
      for (size_t s = 0; s < env.states.size(); ++s) {
        if (!per_state.contains(env.states[s])) {
          throw std::invalid_argument("utilities for " + env.agents[i] + " missing state " +
                                      env.states[s]);
        }
        const json& per_outcome = per_state.at(env.states[s]);
        env.utility[i][s].resize(env.outcomes.size());
        for (size_t z = 0; z < env.outcomes.size(); ++z) {
          if (!per_outcome.contains(env.outcomes[z])) {
            throw std::invalid_argument("utility entry missing for agent " + env.agents[i] +
                                        ", state " + env.states[s] + ", outcome " + env.outcomes[z]);
          }
          env.utility[i][s][z] = JsonRational(per_outcome.at(env.outcomes[z]));
        }
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed environment file: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("malformed environment file: ") + e.what());
  }

  const std::vector<std::string> problems = env.Validate(level);
  if (!problems.empty()) {
    std::ostringstream message;
    message << "environment validation failed:";
    for (const auto& p : problems) message << "\n  " << p;
    throw std::invalid_argument(message.str());
  }
  return env;
}

Environment LoadEnvironmentFile(const std::string& path, Validation level) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open environment file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseEnvironment(buffer.str(), level);
}

std::string EnvironmentToJson(const Environment& env) {
  nlohmann::ordered_json doc;
  if (!env.name.empty()) doc["name"] = env.name;
  doc["agents"] = env.agents;
  doc["states"] = env.states;
  doc["outcomes"] = env.outcomes;
  nlohmann::ordered_json scf;
  for (int s = 0; s < env.NumStates(); ++s) scf[env.states[s]] = env.outcomes[env.scf[s]];
  doc["scf"] = scf;
  nlohmann::ordered_json utilities;
  for (int i = 0; i < env.NumAgents(); ++i) {
    nlohmann::ordered_json per_state;
    for (int s = 0; s < env.NumStates(); ++s) {
      nlohmann::ordered_json per_outcome;
      for (int z = 0; z < env.NumOutcomes(); ++z) {
        per_outcome[env.outcomes[z]] = FormatRational(env.utility[i][s][z]);
      }
      per_state[env.states[s]] = per_outcome;
    }
    utilities[env.agents[i]] = per_state;
  }
  doc["utilities"] = utilities;
  if (!env.notes.empty()) doc["notes"] = env.notes;
  return doc.dump(2);
}

Rational ExpectedUtility(const Environment& env, int agent, const Lottery& y, int state) {
  if (agent < 0 || agent >= env.NumAgents()) throw std::out_of_range("unknown agent index");
  if (state < 0 || state >= env.NumStates()) throw std::out_of_range("unknown state index");
  Rational total(0);
  for (int z = 0; z < env.NumOutcomes(); ++z) {
    if (y.probs[z] != 0) total += y.probs[z] * env.utility[agent][state][z];
  }
  return total;
}

bool SatisfiesContour(const Environment& env, const ContourSpec& spec, const Lottery& y) {
  const Rational benchmark = ExpectedUtility(env, spec.agent, spec.benchmark, spec.state);
  const Rational value = ExpectedUtility(env, spec.agent, y, spec.state);
  switch (spec.kind) {
    case ContourKind::kWeakLower:
      return value <= benchmark;
    case ContourKind::kStrictLower:
      return value < benchmark;
    case ContourKind::kStrictUpper:
      return value > benchmark;
  }
  return false;
}

std::vector<int> ActiveAgents(const Environment& env, int state) {
  if (state < 0 || state >= env.NumStates()) throw std::out_of_range("unknown state index");
  std::vector<int> active;
  const int chosen = env.scf[state];
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int z = 0; z < env.NumOutcomes(); ++z) {
      if (env.utility[i][state][chosen] > env.utility[i][state][z]) {
        active.push_back(i);
        break;
      }
    }
  }
  return active;
}

std::vector<int> ActiveAgentsEvent(const Environment& env, const std::vector<int>& event) {
  if (event.empty()) throw std::invalid_argument("active agents of an empty event");
  std::vector<int> result = ActiveAgents(env, event[0]);
  for (size_t k = 1; k < event.size(); ++k) {
    const std::vector<int> next = ActiveAgents(env, event[k]);
    std::vector<int> merged;
    std::set_intersection(result.begin(), result.end(), next.begin(), next.end(),
                          std::back_inserter(merged));
    result = std::move(merged);
  }
  return result;
}

ActiveSets::ActiveSets(const Environment& env) {
  per_state_.reserve(env.NumStates());
  for (int s = 0; s < env.NumStates(); ++s) per_state_.push_back(ActiveAgents(env, s));
}

const std::vector<int>& ActiveSets::AtEvent(const std::vector<int>& event) const {
  if (event.empty()) throw std::invalid_argument("active agents of an empty event");
  std::vector<int> key = event;
  std::sort(key.begin(), key.end());
  auto it = event_cache_.find(key);
  if (it != event_cache_.end()) return it->second;
  std::vector<int> result = per_state_[key[0]];
  for (size_t k = 1; k < key.size(); ++k) {
    std::vector<int> merged;
    std::set_intersection(result.begin(), result.end(), per_state_[key[k]].begin(),
                          per_state_[key[k]].end(), std::back_inserter(merged));
    result = std::move(merged);
  }
  return event_cache_.emplace(std::move(key), std::move(result)).first->second;
}

Partition ScfPartition(const Environment& env) {
  std::map<int, std::vector<int>> by_outcome;
  for (int s = 0; s < env.NumStates(); ++s) by_outcome[env.scf[s]].push_back(s);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_outcome.size());
  for (auto& [outcome, block] : by_outcome) blocks.push_back(std::move(block));
  return Partition(std::move(blocks));
}

std::optional<int> CondorcetWinner(const Environment& env, int state) {
  for (int z = 0; z < env.NumOutcomes(); ++z) {
    bool wins_all = true;
    for (int other = 0; other < env.NumOutcomes() && wins_all; ++other) {
      if (other == z) continue;
      int prefer = 0;
      int oppose = 0;
      for (int i = 0; i < env.NumAgents(); ++i) {
        if (env.utility[i][state][z] > env.utility[i][state][other]) ++prefer;
        if (env.utility[i][state][z] < env.utility[i][state][other]) ++oppose;
      }
      if (prefer <= oppose) wins_all = false;
    }
    if (wins_all) return z;
  }
  return std::nullopt;
}

bool IsCondorcetFunction(const Environment& env) {
  for (int s = 0; s < env.NumStates(); ++s) {
    const std::optional<int> winner = CondorcetWinner(env, s);
    if (!winner.has_value() || *winner != env.scf[s]) return false;
  }
  return true;
}

}  // namespace ratimpl

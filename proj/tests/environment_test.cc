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

#include <stdexcept>

#include "doctest.h"
#include "testutil.h"

namespace ratimpl {

using testutil::LoadExample;
using testutil::MakeLottery;

namespace {

const char* kMinimalEnv = R"({
  "agents": ["p1", "p2", "p3"],
  "states": ["s1", "s2"],
  "outcomes": ["a", "b"],
  "scf": {"s1": "a", "s2": "b"},
  "utilities": {
    "p1": {"s1": {"a": 1, "b": 0}, "s2": {"a": 0, "b": 0}},
    "p2": {"s1": {"a": 0, "b": 0}, "s2": {"a": 0, "b": 0}},
    "p3": {"s1": {"a": 0, "b": 0}, "s2": {"a": 0, "b": 0}}
  }
})";

}  // namespace

TEST_CASE("bundled files parse to the expected shapes") {
  const Environment env = LoadExample("ex1a");
  CHECK(env.NumAgents() == 4);
  CHECK(env.NumStates() == 3);
  CHECK(env.NumOutcomes() == 3);
  CHECK(env.scf[env.StateIndex("theta2")] == env.OutcomeIndex("b"));
}

TEST_CASE("minimal environment is accepted") {
  const Environment env = ParseEnvironment(kMinimalEnv);
  CHECK(env.NumStates() == 2);
  CHECK(env.Validate(Validation::kStrict).empty());
}

TEST_CASE("zero denominators are rejected") {
  std::string text = kMinimalEnv;
  text.replace(text.find("\"a\": 1"), 6, "\"a\": \"1/0\"");
  CHECK_THROWS_WITH_AS(ParseEnvironment(text), doctest::Contains("invalid rational"),
                       std::invalid_argument);
}

TEST_CASE("structural problems are rejected") {
  std::string missing = kMinimalEnv;
  missing.replace(missing.find("\"a\": 1, "), 8, "");
  CHECK_THROWS_AS(ParseEnvironment(missing), std::invalid_argument);

  std::string bad_scf = kMinimalEnv;
  bad_scf.replace(bad_scf.find("\"s2\": \"b\""), 9, "\"s2\": \"z\"");
  CHECK_THROWS_AS(ParseEnvironment(bad_scf), std::invalid_argument);

  std::string duplicate = kMinimalEnv;
  duplicate.replace(duplicate.find("\"s1\", \"s2\""), 10, "\"s1\", \"s1\"");
  CHECK_THROWS_AS(ParseEnvironment(duplicate), std::invalid_argument);
}

TEST_CASE("lenient validation tolerates fewer than three agents") {
  const char* two_agents = R"({
    "agents": ["p1", "p2"],
    "states": ["s1", "s2"],
    "outcomes": ["a", "b"],
    "scf": {"s1": "a", "s2": "b"},
    "utilities": {
      "p1": {"s1": {"a": 1, "b": 0}, "s2": {"a": 0, "b": 0}},
      "p2": {"s1": {"a": 0, "b": 0}, "s2": {"a": 0, "b": 0}}
    }
  })";
  const Environment env = ParseEnvironment(two_agents, Validation::kLenient);
  CHECK(env.NumAgents() == 2);
  CHECK_THROWS_AS(ParseEnvironment(two_agents, Validation::kStrict), std::invalid_argument);
}

TEST_CASE("expected utility evaluates the affine extension") {
  const Environment env = LoadExample("ex1a");
  const int i1 = env.AgentIndex("i1");
  const int theta1 = env.StateIndex("theta1");
  CHECK(ExpectedUtility(env, i1, MakeLottery(env, {{"a", 1}}), theta1) == 2);
  const Lottery half = MakeLottery(env, {{"a", Rational(1, 2)}, {"c", Rational(1, 2)}});
  CHECK(ExpectedUtility(env, i1, half, theta1) == 1);
  CHECK_THROWS_AS(ExpectedUtility(env, 9, half, theta1), std::out_of_range);
}

TEST_CASE("degenerate lotteries recover pure payoffs exactly") {
  const Environment env = LoadExample("ex2");
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int s = 0; s < env.NumStates(); ++s) {
      for (int z = 0; z < env.NumOutcomes(); ++z) {
        CHECK(ExpectedUtility(env, i, Lottery::Degenerate(z, env.NumOutcomes()), s) ==
              env.utility[i][s][z]);
      }
    }
  }
}

TEST_CASE("expected utility is affine in the mixing weight") {
  const Environment env = LoadExample("ex4");
  testutil::Rng rng(20260809);
  for (int trial = 0; trial < 50; ++trial) {
    Lottery y = Lottery::Degenerate(rng.IntIn(0, 2), 3);
    Lottery y2 = MakeLottery(env, {{"a", Rational(rng.IntIn(0, 3), 3)}});
    y2.probs[1] = Rational(1) - y2.probs[0];
    const Rational lambda(rng.IntIn(0, 7), 7);
    const Lottery mix = MixLotteries(lambda, y, y2);
    const int agent = rng.IntIn(0, 2);
    const int state = rng.IntIn(0, 3);
    CHECK(ExpectedUtility(env, agent, mix, state) ==
          lambda * ExpectedUtility(env, agent, y, state) +
              (Rational(1) - lambda) * ExpectedUtility(env, agent, y2, state));
  }
}

TEST_CASE("contour membership matches the defining inequalities") {
  const Environment env = LoadExample("ex4");
  const int agent = env.AgentIndex("i1");
  const int theta1 = env.StateIndex("theta1");
  const ContourSpec strict_lower{agent, MakeLottery(env, {{"a", 1}}), theta1,
                                 ContourKind::kStrictLower};
  CHECK(SatisfiesContour(env, strict_lower, MakeLottery(env, {{"b", 1}})));
  CHECK_FALSE(SatisfiesContour(env, strict_lower, MakeLottery(env, {{"c", 1}})));

  const ContourSpec weak{agent, MakeLottery(env, {{"a", 1}}), theta1, ContourKind::kWeakLower};
  CHECK(SatisfiesContour(env, weak, MakeLottery(env, {{"a", 1}})));
}

TEST_CASE("active agents recompute from the table") {
  const Environment ex2 = LoadExample("ex2");
  CHECK(ActiveAgents(ex2, ex2.StateIndex("theta2")) ==
        std::vector<int>{0, 1, 3});  // i1, i2, i4
  const Environment ex6 = LoadExample("ex6");
  CHECK(ActiveAgents(ex6, ex6.StateIndex("theta1")) == std::vector<int>{1, 2});  // i2, i3
  const Environment ex7 = LoadExample("ex7");
  CHECK(ActiveAgents(ex7, ex7.StateIndex("theta1")) == std::vector<int>{0, 1, 2});
}

TEST_CASE("membership in the active set means something is strictly worse") {
  for (const char* name : {"ex1a", "ex2", "ex5", "ex6"}) {
    const Environment env = LoadExample(name);
    for (int s = 0; s < env.NumStates(); ++s) {
      const std::vector<int> active = ActiveAgents(env, s);
      for (int i = 0; i < env.NumAgents(); ++i) {
        Rational worst = env.utility[i][s][0];
        for (int z = 1; z < env.NumOutcomes(); ++z) {
          worst = std::min(worst, env.utility[i][s][z]);
        }
        const bool is_active =
            std::binary_search(active.begin(), active.end(), i);
        CHECK(is_active == (worst < env.utility[i][s][env.scf[s]]));
      }
    }
  }
}

TEST_CASE("event active sets intersect the per-state sets") {
  const Environment ex6 = LoadExample("ex6");
  CHECK(ActiveAgentsEvent(ex6, {0, 1, 2}).empty());
  const Environment ex2 = LoadExample("ex2");
  CHECK(ActiveAgentsEvent(ex2, {0}) == ActiveAgents(ex2, 0));
  CHECK(ActiveAgentsEvent(ex2, {0, 1}) == std::vector<int>{0, 1});  // i1, i2
  CHECK_THROWS_AS(ActiveAgentsEvent(ex2, {}), std::invalid_argument);

  const ActiveSets sets(ex6);
  CHECK(sets.AtEvent({2, 0, 1}).empty());
  CHECK(sets.AtEvent({1}) == ActiveAgents(ex6, 1));
}

TEST_CASE("the scf partition groups states by image") {
  const Environment ex4 = LoadExample("ex4");
  const Partition p4 = ScfPartition(ex4);
  CHECK(p4.blocks() == std::vector<std::vector<int>>{{0, 1, 2}, {3}});
  const Environment ex1b = LoadExample("ex1b");
  CHECK(ScfPartition(ex1b) == Partition::Singletons(3));
  const Environment ex3a = LoadExample("ex3a");
  CHECK(ScfPartition(ex3a).blocks() == std::vector<std::vector<int>>{{0, 1}, {2}});
  for (const auto& block : p4.blocks()) {
    for (int s : block) CHECK(ex4.scf[s] == ex4.scf[block[0]]);
  }
}

TEST_CASE("condorcet winners follow strict pairwise majorities") {
  const Environment ex6 = LoadExample("ex6");
  CHECK(CondorcetWinner(ex6, ex6.StateIndex("theta1")) == ex6.OutcomeIndex("a"));
  CHECK(IsCondorcetFunction(ex6));
  const Environment ex7 = LoadExample("ex7");
  CHECK(CondorcetWinner(ex7, ex7.StateIndex("theta4")) == ex7.OutcomeIndex("c"));
  CHECK(IsCondorcetFunction(ex7));
}

TEST_CASE("a single outcome is its own condorcet winner") {
  Environment env = ParseEnvironment(kMinimalEnv);
  env.outcomes = {"a"};
  env.scf = {0, 0};
  for (auto& per_agent : env.utility) {
    for (auto& per_state : per_agent) per_state.assign(1, Rational(0));
  }
  CHECK(CondorcetWinner(env, 0) == 0);
}

TEST_CASE("condorcet winners are unique when they exist") {
  testutil::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    for (int s = 0; s < env.NumStates(); ++s) {
      int winners = 0;
      for (int z = 0; z < env.NumOutcomes(); ++z) {
        bool beats_all = true;
        for (int other = 0; other < env.NumOutcomes() && beats_all; ++other) {
          if (other == z) continue;
          int prefer = 0;
          int oppose = 0;
          for (int i = 0; i < env.NumAgents(); ++i) {
            if (env.utility[i][s][z] > env.utility[i][s][other]) ++prefer;
            if (env.utility[i][s][z] < env.utility[i][s][other]) ++oppose;
          }
          beats_all = prefer > oppose;
        }
        if (beats_all) ++winners;
      }
      CHECK(winners <= 1);
      CHECK(CondorcetWinner(env, s).has_value() == (winners == 1));
    }
  }
}

}  // namespace ratimpl

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

#include "doctest.h"
#include "testutil.h"

namespace ratimpl {
namespace {

using testutil::LoadExample;

// Every witness lottery in a report must satisfy the defining inequalities of
// its obligation exactly. Covers the pairwise axioms and the starred plans.
void CheckWitnessesReverify(const Environment& env, const AxiomReport& report) {
  for (const auto& record : report.witnesses) {
    for (const auto& q : record.qualifying) {
      for (const auto& entry : q.plan) {
        if (!record.true_state.has_value()) continue;
        const int reported = entry.state;
        const Rational value_reported = ExpectedUtility(env, q.agent, entry.lottery, reported);
        const Rational value_true =
            ExpectedUtility(env, q.agent, entry.lottery, *record.true_state);
        if (report.axiom == "maskin") {
          CHECK(value_reported <= env.utility[q.agent][reported][env.scf[reported]]);
          CHECK(value_true > env.utility[q.agent][*record.true_state][env.scf[reported]]);
        } else if (report.axiom == "strict-maskin" || report.axiom == "smm-star" ||
                   report.axiom == "smm-star-star" || report.axiom == "strict-event") {
          CHECK(value_reported < env.utility[q.agent][reported][env.scf[reported]]);
          CHECK(value_true > env.utility[q.agent][*record.true_state][env.scf[reported]]);
        }
      }
    }
  }
}

Environment TwoStateSameprefsEnv() {
  // Identical preferences at both states but different f-values: no agent can
  // ever distinguish the states, so (plain and strict) monotonicity fail.
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.states = {"s1", "s2"};
  env.outcomes = {"a", "b"};
  env.scf = {0, 1};
  env.utility.assign(3, {{Rational(1), Rational(0)}, {Rational(1), Rational(0)}});
  return env;
}

}  // namespace

TEST_CASE("nwa: violations are per agent-state pair") {
  const Environment ex1a = LoadExample("ex1a");
  const AxiomReport report = CheckNwa(ex1a);
  CHECK_FALSE(report.holds);
  REQUIRE(report.counterexamples.size() == 3);
  for (const auto& record : report.counterexamples) {
    CHECK(ex1a.agents[*record.agent] == "i4");
  }
  CHECK(CheckNwa(LoadExample("ex1b")).holds);
  CHECK(CheckNwa(LoadExample("ex4")).holds);
}

TEST_CASE("nwa is equivalent to full active sets") {
  testutil::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    bool all_active = true;
    for (int s = 0; s < env.NumStates(); ++s) {
      all_active =
          all_active && static_cast<int>(ActiveAgents(env, s).size()) == env.NumAgents();
    }
    CHECK(CheckNwa(env).holds == all_active);
  }
}

TEST_CASE("responsiveness is injectivity") {
  const AxiomReport ex3a = CheckResponsiveness(LoadExample("ex3a"));
  CHECK_FALSE(ex3a.holds);
  REQUIRE(ex3a.counterexamples.size() == 1);
  CHECK(*ex3a.counterexamples[0].state == 0);
  CHECK(*ex3a.counterexamples[0].true_state == 1);
  CHECK(CheckResponsiveness(LoadExample("ex1a")).holds);

  // Pigeonhole: more states than outcomes can never be injective.
  testutil::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    if (env.NumStates() > env.NumOutcomes()) {
      CHECK_FALSE(CheckResponsiveness(env).holds);
    }
  }
}

TEST_CASE("maskin monotonicity on the appendix examples") {
  CHECK(CheckMaskinMonotonicity(LoadExample("ex5")).holds);
  CHECK(CheckMaskinMonotonicity(LoadExample("ex7")).holds);
  CHECK_FALSE(CheckMaskinMonotonicity(TwoStateSameprefsEnv()).holds);
  CheckWitnessesReverify(LoadExample("ex5"), CheckMaskinMonotonicity(LoadExample("ex5")));
}

TEST_CASE("no-veto power") {
  CHECK(CheckNoVeto(LoadExample("ex6")).holds);
  CHECK(CheckNoVeto(LoadExample("ex5")).holds);
  // All agents top-rank b at s1 yet f(s1) = a.
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.states = {"s1", "s2"};
  env.outcomes = {"a", "b"};
  env.scf = {0, 1};
  env.utility.assign(3, {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}});
  const AxiomReport report = CheckNoVeto(env);
  CHECK_FALSE(report.holds);
  REQUIRE_FALSE(report.counterexamples.empty());
  CHECK(*report.counterexamples[0].state == 0);
  CHECK(*report.counterexamples[0].outcome == 1);
}

TEST_CASE("strict maskin monotonicity") {
  CHECK(CheckStrictMaskin(LoadExample("ex1a")).holds);
  CHECK(CheckStrictMaskin(LoadExample("ex1b")).holds);
  CHECK_FALSE(CheckStrictMaskin(TwoStateSameprefsEnv()).holds);
  CheckWitnessesReverify(LoadExample("ex1a"), CheckStrictMaskin(LoadExample("ex1a")));
}

TEST_CASE("strict implies plain maskin monotonicity on random instances") {
  testutil::Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    if (CheckStrictMaskin(env).holds) CHECK(CheckMaskinMonotonicity(env).holds);
  }
}

TEST_CASE("star variant: no partition for the appendix example") {
  const AxiomReport report = CheckStrictMaskinStar(LoadExample("ex4"));
  CHECK_FALSE(report.holds);
  CHECK_FALSE(report.partition.has_value());
  CHECK_FALSE(report.counterexamples.empty());
}

TEST_CASE("star variant: responsive case reduces to strict maskin") {
  const Environment env = LoadExample("ex1b");
  const AxiomReport report = CheckStrictMaskinStar(env);
  CHECK(report.holds);
  CHECK(*report.partition == Partition::Singletons(3));
  CheckWitnessesReverify(env, report);
}

TEST_CASE("star variant: pooled states of the degenerate example") {
  const Environment env = LoadExample("ex3a");
  const AxiomReport report = CheckStrictMaskinStar(env);
  CHECK(report.holds);
  CHECK(report.partition->blocks() == std::vector<std::vector<int>>{{0, 1}, {2}});
  CheckWitnessesReverify(env, report);
}

TEST_CASE("star-star variant: state-contingent plans for the appendix example") {
  const Environment env = LoadExample("ex4");
  const AxiomReport report = CheckStrictMaskinStarStar(env);
  CHECK(report.holds);
  CHECK(*report.partition == ScfPartition(env));
  CheckWitnessesReverify(env, report);

  // Agent i1 blocks the pooled block against true theta4 with plan b, c, c.
  const int i1 = env.AgentIndex("i1");
  bool found_agent1 = false;
  bool found_agent3 = false;
  for (const auto& record : report.witnesses) {
    if (record.reported_block.size() == 3 && *record.true_state == 3) {
      for (const auto& q : record.qualifying) {
        if (q.agent != i1) continue;
        found_agent1 = true;
        REQUIRE(q.plan.size() == 3);
        CHECK(q.plan[0].lottery.IsDegenerate(env.OutcomeIndex("b")));
        CHECK(q.plan[1].lottery.IsDegenerate(env.OutcomeIndex("c")));
        CHECK(q.plan[2].lottery.IsDegenerate(env.OutcomeIndex("c")));
      }
      CHECK(record.qualifying.size() == 1);  // i1 is the only qualifying blower
    }
    if (record.reported_block == std::vector<int>{3}) {
      for (const auto& q : record.qualifying) {
        if (q.agent == env.AgentIndex("i3")) {
          found_agent3 = true;
          REQUIRE(q.plan.size() == 1);
          CHECK(q.plan[0].lottery.IsDegenerate(env.OutcomeIndex("b")));
        }
      }
    }
  }
  CHECK(found_agent1);
  CHECK(found_agent3);
}

TEST_CASE("star-star variant fails on the condorcet counterexample") {
  const Environment env = LoadExample("ex7");
  const AxiomReport report = CheckStrictMaskinStarStar(env);
  CHECK_FALSE(report.holds);
  REQUIRE(report.counterexamples.size() == 1);
  CHECK(*report.counterexamples[0].true_state == env.StateIndex("theta4"));
  CHECK(report.counterexamples[0].reported_block.size() == 3);
  CHECK(report.counterexamples[0].qualifying.empty());
}

TEST_CASE("star implies star-star on random instances") {
  testutil::Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    if (CheckStrictMaskinStar(env).holds) CHECK(CheckStrictMaskinStarStar(env).holds);
  }
}

TEST_CASE("responsive instances collapse the starred variants to strict maskin") {
  // With an injective scf the only refinement of P_f is the all-singleton
  // partition, whose obligations are exactly the pairwise strict-Maskin ones.
  testutil::Rng rng(18);
  for (int trial = 0; trial < 40; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, true);
    const bool strict = CheckStrictMaskin(env).holds;
    CHECK(CheckStrictMaskinStar(env).holds == strict);
    CHECK(CheckStrictMaskinStarStar(env).holds == strict);
  }
}

TEST_CASE("responsive instances collapse the combined axiom to event plus dictator") {
  testutil::Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, true);
    const bool separate =
        CheckStrictEventMonotonicity(env).holds && CheckDictatorMonotonicity(env).holds;
    CHECK(CheckStrictEventStarStar(env).holds == separate);
  }
}

TEST_CASE("pure-outcome oracle for the pooled-state partition") {
  // Degenerate c blocks the pooled block at true theta3 and degenerate b
  // blocks theta3 from inside the block, for every agent: the common-plan
  // obligations are dischargeable by pure outcomes alone.
  const Environment env = LoadExample("ex3a");
  const Lottery c = Lottery::Degenerate(env.OutcomeIndex("c"), 3);
  const Lottery b = Lottery::Degenerate(env.OutcomeIndex("b"), 3);
  const Lottery image_a = Lottery::Degenerate(env.OutcomeIndex("a"), 3);
  const Lottery image_c = Lottery::Degenerate(env.OutcomeIndex("c"), 3);
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int pooled : {0, 1}) {
      CHECK(SatisfiesContour(env, {i, image_a, pooled, ContourKind::kStrictLower}, c));
      CHECK(SatisfiesContour(env, {i, image_c, pooled, ContourKind::kStrictUpper}, b));
    }
    CHECK(SatisfiesContour(env, {i, image_a, 2, ContourKind::kStrictUpper}, c));
    CHECK(SatisfiesContour(env, {i, image_c, 2, ContourKind::kStrictLower}, b));
  }
}

TEST_CASE("strict event monotonicity on the bundled corpus") {
  const AxiomReport ex6 = CheckStrictEventMonotonicity(LoadExample("ex6"));
  CHECK_FALSE(ex6.holds);
  bool full_event_failure = false;
  for (const auto& record : ex6.counterexamples) {
    full_event_failure = full_event_failure || record.event.size() == 3;
  }
  CHECK(full_event_failure);  // the whole state space has no common active agent
  CHECK(CheckStrictEventMonotonicity(LoadExample("ex1b")).holds);
}

TEST_CASE("singleton events with matching image impose nothing") {
  const Environment env = LoadExample("ex1b");
  const AxiomReport report = CheckStrictEventMonotonicity(env);
  for (const auto& record : report.witnesses) {
    if (record.event.size() == 1) CHECK(record.event[0] != *record.true_state);
  }
}

TEST_CASE("under nwa strict event monotonicity matches strict maskin") {
  testutil::Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    Environment env = testutil::RandomEnvironment(rng, false);
    testutil::ForceNwa(env, rng);
    REQUIRE(CheckNwa(env).holds);
    CHECK(CheckStrictEventMonotonicity(env).holds == CheckStrictMaskin(env).holds);
  }
}

TEST_CASE("dictator monotonicity is vacuous without sole active agents") {
  CHECK(CheckDictatorMonotonicity(LoadExample("ex1b")).holds);
  const AxiomReport ex1a = CheckDictatorMonotonicity(LoadExample("ex1a"));
  CHECK(ex1a.holds);
  CHECK(ex1a.witnesses.empty());
}

TEST_CASE("dictator witnesses satisfy both defining inequalities") {
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.states = {"s1", "s2"};
  env.outcomes = {"a", "b"};
  env.scf = {0, 1};
  env.utility = {
      {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
      {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}},
      {{Rational(0), Rational(1)}, {Rational(0), Rational(1)}}};
  REQUIRE(ActiveAgents(env, 0) == std::vector<int>{0});
  const AxiomReport report = CheckDictatorMonotonicity(env);
  CHECK(report.holds);
  CHECK_FALSE(report.witnesses.empty());
  for (const auto& record : report.witnesses) {
    for (const auto& q : record.qualifying) {
      for (const auto& entry : q.plan) {
        const int theta_second = entry.state;
        CHECK(ExpectedUtility(env, q.agent, entry.lottery, theta_second) <=
              env.utility[q.agent][theta_second][env.scf[theta_second]]);
        CHECK(ExpectedUtility(env, q.agent, entry.lottery, *record.true_state) >
              env.utility[q.agent][*record.true_state][env.scf[*record.state]]);
      }
    }
  }
}

TEST_CASE("dictator monotonicity can fail") {
  // p1 is the sole active agent at s1, f(s1) != f(s2), and p1 is indifferent
  // at s2: everything weakly below f(s2) at s2 also sits weakly below f(s1)
  // there, so no credible strictly profitable plan exists.
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.states = {"s1", "s2"};
  env.outcomes = {"a", "b"};
  env.scf = {0, 1};
  env.utility = {
      {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}},   // p1: active at s1
      {{Rational(0), Rational(1)}, {Rational(0), Rational(0)}},   // p2: a is worst at s1
      {{Rational(0), Rational(1)}, {Rational(0), Rational(0)}}};  // p3: a is worst at s1
  REQUIRE(ActiveAgents(env, 0) == std::vector<int>{0});
  const AxiomReport report = CheckDictatorMonotonicity(env);
  CHECK_FALSE(report.holds);
  bool found = false;
  for (const auto& record : report.counterexamples) {
    found = found || (*record.agent == 0 && *record.state == 0 && *record.true_state == 1 &&
                      *record.credibility_state == 1);
  }
  CHECK(found);
}

TEST_CASE("iterated elimination on the responsive example") {
  const Environment env = LoadExample("ex1b");
  const std::optional<EliminationOrder> order = CheckStrictIteratedElimination(env, 0);
  REQUIRE(order.has_value());
  REQUIRE(order->steps.size() == 2);
  CHECK(order->steps[0].state == 1);
  CHECK(order->steps[1].state == 2);
  CHECK(order->final_state == 0);
  for (const auto& step : order->steps) {
    CHECK(step.lottery.IsDegenerate(env.OutcomeIndex("a")));
  }
}

TEST_CASE("iterated elimination base cases") {
  Environment single;
  single.agents = {"p1", "p2", "p3"};
  single.states = {"s1"};
  single.outcomes = {"a", "b"};
  single.scf = {0};
  single.utility.assign(3, {{Rational(1), Rational(0)}});
  const std::optional<EliminationOrder> order = CheckStrictIteratedElimination(single, 0);
  REQUIRE(order.has_value());
  CHECK(order->steps.empty());

  CHECK_FALSE(CheckStrictIteratedElimination(LoadExample("ex6"), 0).has_value());
}

TEST_CASE("greedy elimination agrees with exhaustive search over orders") {
  testutil::Rng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    for (int target = 0; target < env.NumStates(); ++target) {
      // Exhaustive oracle: try every permutation ending at target.
      std::vector<int> order;
      for (int s = 0; s < env.NumStates(); ++s) {
        if (s != target) order.push_back(s);
      }
      std::sort(order.begin(), order.end());
      bool exhaustive = false;
      do {
        bool ok = true;
        for (size_t k = 0; k < order.size() && ok; ++k) {
          std::vector<int> remaining(order.begin() + k, order.end());
          remaining.push_back(target);
          std::sort(remaining.begin(), remaining.end());
          const std::vector<int> eligible = ActiveAgentsEvent(env, remaining);
          bool deletable = false;
          for (int agent : eligible) {
            const Lottery benchmark =
                Lottery::Degenerate(env.scf[order[k]], env.NumOutcomes());
            deletable =
                deletable ||
                FindBlockingPlan(env, agent,
                                 {{order[k], ContourKind::kStrictLower, benchmark},
                                  {target, ContourKind::kStrictUpper, benchmark}})
                    .has_value();
          }
          ok = deletable;
        }
        exhaustive = exhaustive || ok;
      } while (!exhaustive && std::next_permutation(order.begin(), order.end()));
      CHECK(exhaustive == CheckStrictIteratedElimination(env, target).has_value());
    }
  }
}

TEST_CASE("proposition: responsive scfs satisfy strict event monotonicity iff "
          "every state admits an elimination order") {
  testutil::Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, true);
    bool all_orders = true;
    for (int s = 0; s < env.NumStates(); ++s) {
      all_orders = all_orders && CheckStrictIteratedElimination(env, s).has_value();
    }
    CHECK(CheckStrictEventMonotonicity(env).holds == all_orders);
  }
}

TEST_CASE("event-star-star variant") {
  const Environment ex1b = LoadExample("ex1b");
  const AxiomReport singleton = CheckStrictEventStarStar(ex1b);
  CHECK(singleton.holds);
  CHECK(*singleton.partition == Partition::Singletons(3));

  CHECK_FALSE(CheckStrictEventStarStar(LoadExample("ex6")).holds);

  const Environment ex4 = LoadExample("ex4");
  const AxiomReport combined = CheckStrictEventStarStar(ex4);
  const AxiomReport star_star = CheckStrictMaskinStarStar(ex4);
  CHECK(combined.holds == star_star.holds);
  CHECK(*combined.partition == *star_star.partition);
}

TEST_CASE("event enumeration is capped with a clear error") {
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.outcomes = {"a", "b"};
  for (int s = 0; s < 13; ++s) env.states.push_back("s" + std::to_string(s));
  env.scf.assign(13, 0);
  env.scf[1] = 1;
  env.utility.assign(3, std::vector<std::vector<Rational>>(
                            13, {Rational(1), Rational(0)}));
  CHECK_THROWS_WITH_AS(CheckStrictEventMonotonicity(env), doctest::Contains("capped"),
                       std::invalid_argument);
}

TEST_CASE("axiom registry covers every checker") {
  const Environment env = LoadExample("ex1b");
  for (const auto& id : AxiomIds()) {
    CHECK(IsAxiomId(id));
    const AxiomReport report = RunAxiom(env, id);
    CHECK(report.axiom == id);
  }
  CHECK_FALSE(IsAxiomId("unknown"));
  CHECK_THROWS_AS(RunAxiom(env, "unknown"), std::invalid_argument);
}

}  // namespace ratimpl

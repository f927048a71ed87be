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

#include "ratimpl/lemma_y.h"

#include "doctest.h"
#include "ratimpl/axioms.h"
#include "testutil.h"

namespace ratimpl {
namespace {

using testutil::LoadExample;

LemmaYSystem RebuildWithEpsilon(const Environment& env, const LemmaYSystem& base,
                                const Rational& epsilon) {
  LemmaYSystem scaled = base;
  scaled.epsilon = epsilon;
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int t = 0; t < env.NumStates(); ++t) {
      for (int t2 = 0; t2 < env.NumStates(); ++t2) {
        const Lottery& tail = (t == t2) ? base.worst_avg[i] : base.replace_avg[i][t];
        scaled.penalty[i][t][t2] =
            MixLotteries(Rational(1) - epsilon, base.worst_outcome[i][t2], tail);
      }
    }
  }
  return scaled;
}

}  // namespace

TEST_CASE("the constructed system verifies on every bundled environment") {
  for (const char* name :
       {"ex1a", "ex1b", "ex2", "ex3a", "ex3b", "ex3c", "ex4", "ex5", "ex6", "ex7"}) {
    const Environment env = LoadExample(name);
    const LemmaYSystem system = BuildLemmaY(env);
    const LemmaYCheck check = VerifyLemmaY(env, system);
    CHECK(check.ok);
    CHECK(check.instances_checked > 0);
    CHECK(system.epsilon > 0);
  }
}

TEST_CASE("worst outcomes pick the argmin with low-index ties") {
  const Environment env = LoadExample("ex1b");
  const LemmaYSystem system = BuildLemmaY(env);
  const int i1 = env.AgentIndex("i1");
  CHECK(system.worst_outcome[i1][env.StateIndex("theta1")].IsDegenerate(env.OutcomeIndex("c")));
  CHECK(system.worst_outcome[i1][env.StateIndex("theta2")].IsDegenerate(env.OutcomeIndex("a")));
}

TEST_CASE("inactive agents fall back to the f-image") {
  const Environment env = LoadExample("ex1a");
  const LemmaYSystem system = BuildLemmaY(env);
  const int i4 = env.AgentIndex("i4");
  for (int t = 0; t < env.NumStates(); ++t) {
    CHECK(system.worst_outcome[i4][t].IsDegenerate(env.scf[t]));
  }
}

TEST_CASE("single-state environments have no ranking obligations") {
  Environment env;
  env.agents = {"p1", "p2", "p3"};
  env.states = {"s1"};
  env.outcomes = {"a", "b"};
  env.scf = {0};
  env.utility.assign(3, {{Rational(1), Rational(0)}});
  const LemmaYSystem system = BuildLemmaY(env);
  const LemmaYCheck check = VerifyLemmaY(env, system);
  CHECK(check.ok);
  // reward and penalty families only: one active pair each.
  CHECK(check.instances_checked == 6);
}

TEST_CASE("halving epsilon preserves all three families") {
  for (const char* name : {"ex1b", "ex4", "ex6"}) {
    const Environment env = LoadExample(name);
    const LemmaYSystem system = BuildLemmaY(env);
    const LemmaYSystem halved = RebuildWithEpsilon(env, system, system.epsilon / 2);
    CHECK(VerifyLemmaY(env, halved).ok);
  }
}

TEST_CASE("penalties mutated to the f-image break a certificate") {
  for (const char* name : {"ex1b", "ex5"}) {
    const Environment env = LoadExample(name);
    const LemmaYSystem system = BuildLemmaY(env);
    for (int t = 0; t < env.NumStates(); ++t) {
      for (int t2 = 0; t2 < env.NumStates(); ++t2) {
        for (int i : ActiveAgents(env, t2)) {
          LemmaYSystem tampered = system;
          tampered.penalty[i][t][t2] = Lottery::Degenerate(env.scf[t2], env.NumOutcomes());
          CHECK_FALSE(VerifyLemmaY(env, tampered).ok);
        }
      }
    }
  }
}

TEST_CASE("mutations outside the quantified instances go unnoticed") {
  // i4 is inactive everywhere in ex1a, so no inequality ever binds its
  // penalties: the restricted quantifiers are what the lemma asserts.
  const Environment env = LoadExample("ex1a");
  const LemmaYSystem system = BuildLemmaY(env);
  const int i4 = env.AgentIndex("i4");
  LemmaYSystem tampered = system;
  tampered.penalty[i4][0][0] = Lottery::Degenerate(env.scf[0], env.NumOutcomes());
  CHECK(VerifyLemmaY(env, tampered).ok);
}

TEST_CASE("random environments always admit the construction") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const Environment env = testutil::RandomEnvironment(rng, false);
    const LemmaYSystem system = BuildLemmaY(env);
    CHECK(VerifyLemmaY(env, system).ok);
  }
}

TEST_CASE("sigma contains images, penalties and witnesses in order") {
  const Environment env = LoadExample("ex1b");
  const LemmaYSystem lemma = BuildLemmaY(env);
  const SigmaSet bare = BuildSigma(env, lemma, {});
  // 3 scf images + up to 3*3*3 penalties, after deduplication.
  CHECK(bare.size() >= 3);
  CHECK(bare.size() <= 3 + 27);
  for (int t = 0; t < env.NumStates(); ++t) {
    CHECK(bare.IndexOf(Lottery::Degenerate(env.scf[t], env.NumOutcomes())) != -1);
  }
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int t = 0; t < env.NumStates(); ++t) {
      for (int t2 = 0; t2 < env.NumStates(); ++t2) {
        CHECK(bare.IndexOf(lemma.penalty[i][t][t2]) != -1);
      }
    }
  }

  const Lottery extra = Lottery::Degenerate(0, env.NumOutcomes());  // duplicate of an image
  const SigmaSet with_witness = BuildSigma(env, lemma, {extra});
  CHECK(with_witness.size() == bare.size());  // deduplicated

  // Witnesses harvested from the appendix example include its pure blocking
  // outcomes b and c.
  const Environment ex4 = LoadExample("ex4");
  const LemmaYSystem lemma4 = BuildLemmaY(ex4);
  const AxiomReport star_star = CheckStrictMaskinStarStar(ex4);
  std::vector<Lottery> witnesses;
  for (const auto& record : star_star.witnesses) {
    for (const auto& q : record.qualifying) {
      for (const auto& entry : q.plan) witnesses.push_back(entry.lottery);
    }
  }
  const SigmaSet sigma4 = BuildSigma(ex4, lemma4, witnesses);
  CHECK(sigma4.IndexOf(Lottery::Degenerate(ex4.OutcomeIndex("b"), 3)) != -1);
  CHECK(sigma4.IndexOf(Lottery::Degenerate(ex4.OutcomeIndex("c"), 3)) != -1);
}

}  // namespace ratimpl

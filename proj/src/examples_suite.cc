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

#include "ratimpl/examples_suite.h"

#include <sstream>

#include "ratimpl/axioms.h"
#include "ratimpl/environment.h"
#include "ratimpl/lemma_y.h"
#include "ratimpl/mechanism.h"

namespace ratimpl {
namespace {

constexpr const char* kEx5Flag =
    "erratum: the source claims I^theta2={i1,i2} (hence an empty everywhere-active set and "
    "failing strict event monotonicity); recomputation from the printed table gives "
    "I^theta2={i3,i4} and the axiom holding";

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const std::string& corpus_dir) : corpus_dir_(corpus_dir) {}

  ExamplesRun Run() {
    Ex1a();
    Ex1b();
    Ex2();
    Ex3();
    Ex4();
    Ex5();
    Ex6();
    Ex7();
    FullAxiomMatrix();
    LemmaOnAll();
    return std::move(run_);
  }

 private:
  Environment Load(const std::string& name) {
    return LoadEnvironmentFile(corpus_dir_ + "/" + name + ".json");
  }

  void Row(const std::string& example, const std::string& check, bool pass,
           const std::string& flag = "", const std::string& detail = "") {
    run_.rows.push_back({example, check, pass, flag, detail});
    run_.all_pass = run_.all_pass && pass;
  }

  void ExpectHolds(const Environment& env, const std::string& example, const std::string& axiom,
                   bool expected, const std::string& flag = "") {
    const AxiomReport report = RunAxiom(env, axiom);
    std::ostringstream detail;
    detail << "expected " << (expected ? "holds" : "fails") << ", got "
           << (report.holds ? "holds" : "fails");
    Row(example, axiom, report.holds == expected, flag, detail.str());
  }

  std::string ActiveSetString(const Environment& env, int state) {
    std::string out = "{";
    bool first = true;
    for (int i : ActiveAgents(env, state)) {
      if (!first) out += ",";
      out += env.agents[i];
      first = false;
    }
    return out + "}";
  }

  void Ex1a() {
    const Environment env = Load("ex1a");
    const AxiomReport nwa = CheckNwa(env);
    bool exact = !nwa.holds && nwa.counterexamples.size() == 3;
    for (const auto& record : nwa.counterexamples) {
      exact = exact && record.agent.has_value() && env.agents[*record.agent] == "i4";
    }
    Row("ex1a", "nwa fails exactly at (i4, every state)", exact);
    ExpectHolds(env, "ex1a", "responsiveness", true);
    ExpectHolds(env, "ex1a", "strict-maskin", true);
    ExpectHolds(env, "ex1a", "maskin", true);
  }

  void Ex1b() {
    const Environment env = Load("ex1b");
    ExpectHolds(env, "ex1b", "nwa", true);
    ExpectHolds(env, "ex1b", "responsiveness", true);
    ExpectHolds(env, "ex1b", "strict-maskin", true);
    const AxiomReport star = CheckStrictMaskinStar(env);
    Row("ex1b", "smm-star holds with the singleton partition",
        star.holds && star.partition.has_value() &&
            *star.partition == Partition::Singletons(env.NumStates()));
    ExpectHolds(env, "ex1b", "smm-star-star", true);
    ExpectHolds(env, "ex1b", "strict-event", true);
    ExpectHolds(env, "ex1b", "dictator", true);
    ExpectHolds(env, "ex1b", "iterated-elimination", true);
    ExpectHolds(env, "ex1b", "sem-star-star", true);
  }

  void Ex2() {
    const Environment env = Load("ex2");
    Row("ex2", "active agents at theta1 = {i1,i2,i3}",
        ActiveSetString(env, env.StateIndex("theta1")) == "{i1,i2,i3}");
    Row("ex2", "active agents at theta2 = {i1,i2,i4}",
        ActiveSetString(env, env.StateIndex("theta2")) == "{i1,i2,i4}");
    Row("ex2", "active agents at theta3 = {i1,i3,i4}",
        ActiveSetString(env, env.StateIndex("theta3")) == "{i1,i3,i4}");
    ExpectHolds(env, "ex2", "nwa", false);
    ExpectHolds(env, "ex2", "responsiveness", true);
  }

  void Ex3() {
    const Environment ex3a = Load("ex3a");
    ExpectHolds(ex3a, "ex3a", "responsiveness", false);
    const AxiomReport star = CheckStrictMaskinStar(ex3a);
    const Partition expected(
        {{ex3a.StateIndex("theta1"), ex3a.StateIndex("theta2")}, {ex3a.StateIndex("theta3")}});
    Row("ex3a", "smm-star holds with {{theta1,theta2},{theta3}}",
        star.holds && star.partition.has_value() && *star.partition == expected);

    const Environment ex3b = Load("ex3b");
    ExpectHolds(ex3b, "ex3b", "responsiveness", true);
    ExpectHolds(ex3b, "ex3b", "strict-maskin", true);

    const Environment ex3c = Load("ex3c");
    ExpectHolds(ex3c, "ex3c", "responsiveness", false);
    bool contained = true;
    const int theta1 = ex3c.StateIndex("theta1");
    const int theta2p = ex3c.StateIndex("theta2p");
    const Lottery image = Lottery::Degenerate(ex3c.scf[theta1], ex3c.NumOutcomes());
    for (int i = 0; i < ex3c.NumAgents(); ++i) {
      contained = contained && ContourContainment(ex3c, i, image, theta1, theta2p,
                                                  ContourKind::kWeakLower,
                                                  ContourKind::kWeakLower);
    }
    Row("ex3c", "weak lower contours at theta1 nest inside theta2p for every agent", contained);
  }

  void Ex4() {
    const Environment env = Load("ex4");
    ExpectHolds(env, "ex4", "nwa", true);
    ExpectHolds(env, "ex4", "responsiveness", false);
    const AxiomReport star = CheckStrictMaskinStar(env);
    Row("ex4", "smm-star fails (no partition works)",
        !star.holds && !star.partition.has_value());
    const AxiomReport star_star = CheckStrictMaskinStarStar(env);
    Row("ex4", "smm-star-star holds with the scf partition",
        star_star.holds && star_star.partition.has_value() &&
            *star_star.partition == ScfPartition(env));
    const AxiomReport event_star = CheckStrictEventStarStar(env);
    Row("ex4", "sem-star-star holds with the scf partition",
        event_star.holds && event_star.partition.has_value() &&
            *event_star.partition == ScfPartition(env));
  }

  void Ex5() {
    const Environment env = Load("ex5");
    ExpectHolds(env, "ex5", "maskin", true);
    ExpectHolds(env, "ex5", "no-veto", true);
    ExpectHolds(env, "ex5", "responsiveness", true);
    ExpectHolds(env, "ex5", "nwa", false);
    Row("ex5", "recomputed active agents at theta1 = {i3,i4}",
        ActiveSetString(env, env.StateIndex("theta1")) == "{i3,i4}", kEx5Flag);
    Row("ex5", "recomputed active agents at theta2 = {i3,i4}",
        ActiveSetString(env, env.StateIndex("theta2")) == "{i3,i4}", kEx5Flag);
    ExpectHolds(env, "ex5", "strict-event", true, kEx5Flag);
  }

  void Ex6() {
    const Environment env = Load("ex6");
    ExpectHolds(env, "ex6", "maskin", true);
    ExpectHolds(env, "ex6", "no-veto", true);
    ExpectHolds(env, "ex6", "strict-event", false);
    std::vector<int> all_states;
    for (int s = 0; s < env.NumStates(); ++s) all_states.push_back(s);
    Row("ex6", "no agent is active at every state",
        ActiveAgentsEvent(env, all_states).empty());
    Row("ex6", "the scf is the Condorcet function", IsCondorcetFunction(env));
    ExpectHolds(env, "ex6", "nwa", false);
  }

  void Ex7() {
    const Environment env = Load("ex7");
    ExpectHolds(env, "ex7", "nwa", true);
    ExpectHolds(env, "ex7", "maskin", true);
    ExpectHolds(env, "ex7", "no-veto", true);
    ExpectHolds(env, "ex7", "responsiveness", false);
    ExpectHolds(env, "ex7", "strict-maskin", true);
    const AxiomReport star_star = CheckStrictMaskinStarStar(env);
    bool forced_pf_failure = !star_star.holds && star_star.counterexamples.size() == 1;
    if (forced_pf_failure) {
      const auto& record = star_star.counterexamples[0];
      forced_pf_failure = record.true_state.has_value() &&
                          env.states[*record.true_state] == "theta4" &&
                          record.reported_block.size() == 3 && record.qualifying.empty();
    }
    Row("ex7", "smm-star-star fails: no whistle-blower at true theta4 under the scf partition",
        forced_pf_failure);
    Row("ex7", "the scf is the Condorcet function", IsCondorcetFunction(env));
  }

  // Frozen outcome of every axiom on every bundled environment. Rows not
  // discussed by the sources are regression pins; notable ones: the ex3
  // family fails no-veto power (all agents top-rank b at the pooled states
  // while f picks a), and iterated elimination fails on non-responsive
  // instances whose pooled states cannot be deleted against each other.
  void FullAxiomMatrix() {
    struct MatrixRow {
      const char* example;
      // Order: nwa, responsiveness, maskin, no-veto, strict-maskin, smm-star,
      // smm-star-star, strict-event, dictator, iterated-elimination,
      // sem-star-star.
      bool expected[11];
    };
    const MatrixRow rows[] = {
        {"ex1a", {false, true, true, true, true, true, true, true, true, true, true}},
        {"ex1b", {true, true, true, true, true, true, true, true, true, true, true}},
        {"ex2", {false, true, true, true, true, true, true, true, true, true, true}},
        {"ex3a", {true, false, true, false, true, true, true, true, true, false, true}},
        {"ex3b", {true, true, true, false, true, true, true, true, true, true, true}},
        {"ex3c", {true, false, true, false, true, true, true, true, true, false, true}},
        {"ex4", {true, false, true, true, true, false, true, true, true, false, true}},
        {"ex5", {false, true, true, true, true, true, true, true, true, true, true}},
        {"ex6", {false, true, true, true, true, true, true, false, true, false, false}},
        {"ex7", {true, false, true, true, true, false, false, true, true, false, false}},
    };
    const std::vector<std::string> ids = AxiomIds();
    for (const MatrixRow& row : rows) {
      const Environment env = Load(row.example);
      for (size_t k = 0; k < ids.size(); ++k) {
        const AxiomReport report = RunAxiom(env, ids[k]);
        const std::string flag =
            (std::string(row.example) == "ex5" && ids[k] == "strict-event") ? kEx5Flag : "";
        Row(row.example, "matrix: " + ids[k] + (row.expected[k] ? " holds" : " fails"),
            report.holds == row.expected[k], flag);
      }
    }
  }

  void LemmaOnAll() {
    for (const char* name :
         {"ex1a", "ex1b", "ex2", "ex3a", "ex3b", "ex3c", "ex4", "ex5", "ex6", "ex7"}) {
      const Environment env = Load(name);
      bool ok = true;
      std::string detail;
      try {
        const LemmaYSystem system = BuildLemmaY(env);
        const LemmaYCheck check = VerifyLemmaY(env, system);
        ok = check.ok;
        detail = std::to_string(check.instances_checked) + " inequality instances";
      } catch (const CertificateFailure& e) {
        ok = false;
        detail = e.what();
      }
      Row(name, "lottery-system certificates verify", ok, "", detail);
    }
  }

  std::string corpus_dir_;
  ExamplesRun run_;
};

}  // namespace

ExamplesRun RunExamplesSuite(const std::string& corpus_dir) {
  SuiteBuilder builder(corpus_dir);
  return builder.Run();
}

std::string ExamplesRunToText(const ExamplesRun& run) {
  std::ostringstream out;
  for (const auto& row : run.rows) {
    out << (row.pass ? "PASS" : "FAIL") << "  " << row.example << ": " << row.check;
    if (!row.detail.empty()) out << " (" << row.detail << ")";
    if (!row.flag.empty()) out << "\n      [flag] " << row.flag;
    out << "\n";
  }
  out << (run.all_pass ? "all expectations met" : "EXPECTATION FAILURES PRESENT") << "\n";
  return out.str();
}

}  // namespace ratimpl

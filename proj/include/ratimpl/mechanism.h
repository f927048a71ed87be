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

#ifndef RATIMPL_MECHANISM_H_
#define RATIMPL_MECHANISM_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratimpl/axioms.h"
#include "ratimpl/environment.h"
#include "ratimpl/lemma_y.h"
#include "ratimpl/partition.h"

namespace ratimpl {

enum class MechanismVariant { kTheorem1, kTheorem2 };

// One agent's message: a reported state, a positive integer up to the
// truncation bound, a state-contingent plan of Sigma indices, and a pure
// outcome for the integer contest.
struct Message {
  int state = 0;
  int integer = 1;
  std::vector<int> plan;  // per state, index into the Sigma menu
  int outcome = 0;
};

// The canonical report-state-integer-plan-outcome game. Theorem-1 mechanisms
// key agreement on a partition block (all agents), theorem-2 mechanisms on
// unanimity of the state's active agents only. Immutable after construction.
struct CanonicalMechanism {
  MechanismVariant variant = MechanismVariant::kTheorem1;
  Environment env;
  std::optional<Partition> partition;          // theorem1 only
  std::vector<std::vector<int>> active_sets;   // theorem2 only, per state
  SigmaSet sigma;
  LemmaYSystem lemma;
  int n_max = 8;

  // |Theta| * n_max * |Sigma|^|Theta| * |Z| message classes per agent.
  Integer MessageSpaceSizePerAgent() const;
};

// Carries the axiom reports that show which precondition failed.
struct MechanismPreconditionError : std::runtime_error {
  MechanismPreconditionError(const std::string& message, std::vector<AxiomReport> reports)
      : std::runtime_error(message), failing_reports(std::move(reports)) {}
  std::vector<AxiomReport> failing_reports;
};

// Theorem-1 build: requires strict validation, NWA, the partition passing the
// state-contingent blocking sweep, and Sigma containing a blocking entry for
// every (block, outside state) obligation.
CanonicalMechanism BuildTheorem1Mechanism(const Environment& env, const Partition& partition,
                                          const SigmaSet& sigma, const LemmaYSystem& lemma,
                                          int n_max);

// Theorem-2 build: requires strict validation, responsiveness, strict event
// monotonicity, dictator monotonicity, a nonempty set of everywhere-active
// agents, and Sigma covering the event and dictator obligations.
CanonicalMechanism BuildTheorem2Mechanism(const Environment& env, const SigmaSet& sigma,
                                          const LemmaYSystem& lemma, int n_max);

// Runs the precondition checks for `variant`, harvests blocking witnesses
// into Sigma, builds the lemma system and the mechanism.
struct MechanismBundle {
  CanonicalMechanism mechanism;
  std::vector<AxiomReport> precondition_reports;
};
MechanismBundle BuildMechanismPipeline(const Environment& env, MechanismVariant variant,
                                       int n_max = 8);

enum class Rule { kRule1, kRule2a, kRule2b, kRule3 };

struct RuleClassification {
  Rule rule = Rule::kRule1;
  std::optional<int> agreed_state;        // rule 1 (and the others' state in rule 2)
  std::optional<int> deviator;            // rule 2
  std::optional<int> hypothetical_state;  // rule 2: the state whose plan entry applies
  std::optional<int> winner;              // rule 3
};

// Total over well-formed profiles; the agreement / unilateral / multilateral
// classes are disjoint and exhaustive by construction.
RuleClassification ClassifyProfile(const CanonicalMechanism& mech,
                                   const std::vector<Message>& profile);

Lottery MechanismOutcome(const CanonicalMechanism& mech, const std::vector<Message>& profile);

struct CertificateEntry {
  std::string label;
  std::string lhs;
  std::string relation;  // ">" or ">="
  std::string rhs;
  bool pass = false;
};

struct CertificateStep {
  int step = 0;
  std::string name;
  bool pass = false;
  std::string note;
  std::vector<CertificateEntry> entries;
};

struct StateCertificate {
  int true_state = 0;
  bool pass = false;
  std::vector<CertificateStep> steps;
};

struct CertificateReport {
  bool pass = false;
  std::vector<StateCertificate> per_state;
};

// Replays the sufficiency proof of the mechanism's theorem as exact inequality
// certificates, one block of five steps per true state. The integer dimension
// is handled analytically through suprema, so the result does not depend on
// n_max; a pass means the untruncated mechanism rationalizably implements f.
CertificateReport VerifyCertificates(const Environment& env, const CanonicalMechanism& mech);

// The best-challenge selections the certificates rely on: the most profitable
// Sigma entry weakly below f(state) at state, judged at true_state (ties to
// the smallest Sigma index), and the best pure outcome at true_state.
int BestChallengePlanEntry(const Environment& env, const SigmaSet& sigma, int agent, int state,
                           int true_state);
int BestPureOutcome(const Environment& env, int agent, int true_state);

}  // namespace ratimpl

#endif  // RATIMPL_MECHANISM_H_

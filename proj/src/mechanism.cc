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

#include "ratimpl/mechanism.h"

#include <algorithm>
#include <sstream>

namespace ratimpl {
namespace {

bool Contains(const std::vector<int>& sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

void RequireStrictEnv(const Environment& env) {
  const std::vector<std::string> problems = env.Validate(Validation::kStrict);
  if (!problems.empty()) {
    std::ostringstream message;
    message << "mechanism construction requires strict validation:";
    for (const auto& p : problems) message << "\n  " << p;
    throw std::invalid_argument(message.str());
  }
}

void RequireNMax(int n_max) {
  if (n_max < 1) throw std::invalid_argument("truncation bound must be >= 1");
}

// Is there a Sigma entry strictly credible at `reported` (strictly below the
// f-image) and strictly profitable over it at `true_state` for `agent`?
bool SigmaBlocks(const Environment& env, const SigmaSet& sigma, int agent, int reported,
                 int true_state) {
  const Rational f_reported = env.utility[agent][reported][env.scf[reported]];
  const Rational f_at_true = env.utility[agent][true_state][env.scf[reported]];
  for (const Lottery& entry : sigma.lotteries) {
    if (ExpectedUtility(env, agent, entry, reported) < f_reported &&
        ExpectedUtility(env, agent, entry, true_state) > f_at_true) {
      return true;
    }
  }
  return false;
}

// Sigma coverage of the theorem-1 obligations: per (block, outside true
// state), one agent with a strictly credible, strictly profitable Sigma entry
// for every block state.
std::vector<std::string> MissingTheorem1Coverage(const Environment& env,
                                                 const Partition& partition,
                                                 const SigmaSet& sigma) {
  std::vector<std::string> missing;
  for (const auto& block : partition.blocks()) {
    for (int true_state = 0; true_state < env.NumStates(); ++true_state) {
      if (Contains(block, true_state)) continue;
      bool found = false;
      for (int agent = 0; agent < env.NumAgents() && !found; ++agent) {
        bool all = true;
        for (int reported : block) {
          if (!SigmaBlocks(env, sigma, agent, reported, true_state)) {
            all = false;
            break;
          }
        }
        found = all;
      }
      if (!found) {
        missing.push_back("no Sigma blocking entry for block of " + env.states[block[0]] +
                          " against true state " + env.states[true_state]);
      }
    }
  }
  return missing;
}

// Sigma coverage of the theorem-2 obligations: the event condition for every
// (true state, event) with a differing f-image, and the dictator condition.
std::vector<std::string> MissingTheorem2Coverage(const Environment& env, const SigmaSet& sigma) {
  std::vector<std::string> missing;
  const ActiveSets active(env);
  const int n = env.NumStates();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> event;
    for (int s = 0; s < n; ++s) {
      if (mask & (1u << s)) event.push_back(s);
    }
    std::vector<int> image;
    for (int s : event) image.push_back(env.scf[s]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (int true_state = 0; true_state < n; ++true_state) {
      if (image.size() == 1 && image[0] == env.scf[true_state]) continue;
      bool found = false;
      for (int reported : event) {
        for (int agent : active.AtEvent(event)) {
          if (SigmaBlocks(env, sigma, agent, reported, true_state)) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) {
        missing.push_back("no Sigma event witness against true state " + env.states[true_state]);
      }
    }
  }
  for (int theta = 0; theta < n; ++theta) {
    const std::vector<int>& dictators = active.AtState(theta);
    if (dictators.size() != 1) continue;
    const int agent = dictators[0];
    for (int theta_prime = 0; theta_prime < n; ++theta_prime) {
      if (env.scf[theta] == env.scf[theta_prime]) continue;
      for (int theta_second = 0; theta_second < n; ++theta_second) {
        const Rational credibility_bound =
            env.utility[agent][theta_second][env.scf[theta_second]];
        const Rational profit_bound = env.utility[agent][theta_prime][env.scf[theta]];
        bool found = false;
        for (const Lottery& entry : sigma.lotteries) {
          if (ExpectedUtility(env, agent, entry, theta_second) <= credibility_bound &&
              ExpectedUtility(env, agent, entry, theta_prime) > profit_bound) {
            found = true;
            break;
          }
        }
        if (!found) {
          missing.push_back("no Sigma dictator witness for " + env.agents[agent] + " at " +
                            env.states[theta]);
        }
      }
    }
  }
  return missing;
}

std::vector<Lottery> HarvestWitnesses(const AxiomReport& report) {
  std::vector<Lottery> witnesses;
  for (const auto& record : report.witnesses) {
    for (const auto& agent : record.qualifying) {
      for (const auto& entry : agent.plan) witnesses.push_back(entry.lottery);
    }
  }
  return witnesses;
}

void ValidateProfile(const CanonicalMechanism& mech, const std::vector<Message>& profile) {
  const Environment& env = mech.env;
  if (static_cast<int>(profile.size()) != env.NumAgents()) {
    throw std::invalid_argument("profile must carry one message per agent");
  }
  for (const Message& m : profile) {
    if (m.state < 0 || m.state >= env.NumStates()) throw std::out_of_range("message state");
    if (m.integer < 1 || m.integer > mech.n_max) throw std::out_of_range("message integer");
    if (m.outcome < 0 || m.outcome >= env.NumOutcomes()) throw std::out_of_range("message outcome");
    if (static_cast<int>(m.plan.size()) != env.NumStates()) {
      throw std::invalid_argument("message plan must be total over the state set");
    }
    for (int index : m.plan) {
      if (index < 0 || index >= mech.sigma.size()) throw std::out_of_range("plan Sigma index");
    }
  }
}

}  // namespace

Integer CanonicalMechanism::MessageSpaceSizePerAgent() const {
  Integer plans = 1;
  for (int s = 0; s < env.NumStates(); ++s) plans *= sigma.size();
  return Integer(env.NumStates()) * n_max * plans * env.NumOutcomes();
}

CanonicalMechanism BuildTheorem1Mechanism(const Environment& env, const Partition& partition,
                                          const SigmaSet& sigma, const LemmaYSystem& lemma,
                                          int n_max) {
  RequireNMax(n_max);
  RequireStrictEnv(env);
  if (partition.num_elements() != env.NumStates() || !partition.Refines(ScfPartition(env))) {
    throw std::invalid_argument("partition must refine the scf partition");
  }
  std::vector<AxiomReport> failing;
  AxiomReport nwa = CheckNwa(env);
  if (!nwa.holds) failing.push_back(std::move(nwa));
  const std::vector<std::string> missing = MissingTheorem1Coverage(env, partition, sigma);
  if (!missing.empty()) {
    AxiomReport star_star = CheckStrictMaskinStarStar(env);
    if (!star_star.holds) failing.push_back(std::move(star_star));
  }
  if (!failing.empty() || !missing.empty()) {
    std::ostringstream message;
    message << "theorem-1 preconditions failed:";
    for (const auto& r : failing) message << " " << r.axiom;
    for (const auto& m : missing) message << "\n  " << m;
    throw MechanismPreconditionError(message.str(), std::move(failing));
  }

  CanonicalMechanism mech;
  mech.variant = MechanismVariant::kTheorem1;
  mech.env = env;
  mech.partition = partition;
  mech.sigma = sigma;
  mech.lemma = lemma;
  mech.n_max = n_max;
  return mech;
}

CanonicalMechanism BuildTheorem2Mechanism(const Environment& env, const SigmaSet& sigma,
                                          const LemmaYSystem& lemma, int n_max) {
  RequireNMax(n_max);
  RequireStrictEnv(env);
  std::vector<AxiomReport> failing;
  for (const char* id : {"responsiveness", "strict-event", "dictator"}) {
    AxiomReport report = RunAxiom(env, id);
    if (!report.holds) failing.push_back(std::move(report));
  }
  std::vector<int> all_states;
  for (int s = 0; s < env.NumStates(); ++s) all_states.push_back(s);
  const bool has_common_active = !ActiveAgentsEvent(env, all_states).empty();
  std::vector<std::string> missing;
  if (failing.empty() && has_common_active) missing = MissingTheorem2Coverage(env, sigma);
  if (!failing.empty() || !has_common_active || !missing.empty()) {
    std::ostringstream message;
    message << "theorem-2 preconditions failed:";
    for (const auto& r : failing) message << " " << r.axiom;
    if (!has_common_active) message << " (no agent is active at every state)";
    for (const auto& m : missing) message << "\n  " << m;
    throw MechanismPreconditionError(message.str(), std::move(failing));
  }

  CanonicalMechanism mech;
  mech.variant = MechanismVariant::kTheorem2;
  mech.env = env;
  ActiveSets active(env);
  mech.active_sets = active.PerState();
  mech.sigma = sigma;
  mech.lemma = lemma;
  mech.n_max = n_max;
  return mech;
}

MechanismBundle BuildMechanismPipeline(const Environment& env, MechanismVariant variant,
                                       int n_max) {
  MechanismBundle bundle;
  const LemmaYSystem lemma = BuildLemmaY(env);
  if (variant == MechanismVariant::kTheorem1) {
    AxiomReport star_star = CheckStrictMaskinStarStar(env);
    AxiomReport nwa = CheckNwa(env);
    if (!nwa.holds || !star_star.holds) {
      std::vector<AxiomReport> failing;
      if (!nwa.holds) failing.push_back(nwa);
      if (!star_star.holds) failing.push_back(star_star);
      throw MechanismPreconditionError("theorem-1 preconditions failed", std::move(failing));
    }
    const SigmaSet sigma = BuildSigma(env, lemma, HarvestWitnesses(star_star));
    bundle.mechanism =
        BuildTheorem1Mechanism(env, *star_star.partition, sigma, lemma, n_max);
    bundle.precondition_reports.push_back(std::move(nwa));
    bundle.precondition_reports.push_back(std::move(star_star));
    return bundle;
  }
  AxiomReport event = CheckStrictEventMonotonicity(env);
  AxiomReport dictator = CheckDictatorMonotonicity(env);
  AxiomReport responsive = CheckResponsiveness(env);
  std::vector<Lottery> witnesses = HarvestWitnesses(event);
  const std::vector<Lottery> dictator_witnesses = HarvestWitnesses(dictator);
  witnesses.insert(witnesses.end(), dictator_witnesses.begin(), dictator_witnesses.end());
  const SigmaSet sigma = BuildSigma(env, lemma, witnesses);
  bundle.mechanism = BuildTheorem2Mechanism(env, sigma, lemma, n_max);
  bundle.precondition_reports.push_back(std::move(responsive));
  bundle.precondition_reports.push_back(std::move(event));
  bundle.precondition_reports.push_back(std::move(dictator));
  return bundle;
}

RuleClassification ClassifyProfile(const CanonicalMechanism& mech,
                                   const std::vector<Message>& profile) {
  ValidateProfile(mech, profile);
  const Environment& env = mech.env;
  const int num_agents = env.NumAgents();
  RuleClassification result;

  if (mech.variant == MechanismVariant::kTheorem1) {
    const Partition& partition = *mech.partition;
    // Rule 1: everyone reports inside one block with integer 1.
    bool agreement = profile[0].integer == 1;
    const int block0 = partition.BlockIndexOf(profile[0].state);
    for (int i = 1; i < num_agents && agreement; ++i) {
      agreement = profile[i].integer == 1 && partition.BlockIndexOf(profile[i].state) == block0;
    }
    if (agreement) {
      result.rule = Rule::kRule1;
      result.agreed_state = partition.blocks()[block0][0];
      return result;
    }
    // Rule 2: all but one agent inside one block with integer 1.
    for (int i = 0; i < num_agents; ++i) {
      int block = -1;
      bool rest_agree = true;
      for (int j = 0; j < num_agents && rest_agree; ++j) {
        if (j == i) continue;
        if (profile[j].integer != 1) {
          rest_agree = false;
          break;
        }
        const int b = partition.BlockIndexOf(profile[j].state);
        if (block == -1) block = b;
        rest_agree = (b == block);
      }
      if (!rest_agree) continue;
      result.deviator = i;
      result.agreed_state = partition.blocks()[block][0];
      const int next = (i + 1) % num_agents;
      result.hypothetical_state = profile[next].state;
      const Lottery& challenge = mech.sigma.lotteries[profile[i].plan[*result.hypothetical_state]];
      const Rational f_value =
          env.utility[i][*result.hypothetical_state][env.scf[*result.hypothetical_state]];
      result.rule = f_value >= ExpectedUtility(env, i, challenge, *result.hypothetical_state)
                        ? Rule::kRule2a
                        : Rule::kRule2b;
      return result;
    }
  } else {
    // Rule 1: the state's active agents all report (theta, 1).
    int agreed = -1;
    for (int theta = 0; theta < env.NumStates(); ++theta) {
      bool ok = true;
      for (int i : mech.active_sets[theta]) {
        if (profile[i].state != theta || profile[i].integer != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (agreed != -1) throw std::logic_error("agreement state is not unique");
        agreed = theta;
      }
    }
    if (agreed != -1) {
      result.rule = Rule::kRule1;
      result.agreed_state = agreed;
      return result;
    }
    // Rule 2: all agents but one report the same (theta, 1).
    for (int i = 0; i < num_agents; ++i) {
      int theta = -1;
      bool rest_agree = true;
      for (int j = 0; j < num_agents && rest_agree; ++j) {
        if (j == i) continue;
        if (profile[j].integer != 1) {
          rest_agree = false;
          break;
        }
        if (theta == -1) theta = profile[j].state;
        rest_agree = (profile[j].state == theta);
      }
      if (!rest_agree) continue;
      result.deviator = i;
      result.agreed_state = theta;
      result.hypothetical_state = theta;
      const Lottery& challenge = mech.sigma.lotteries[profile[i].plan[theta]];
      const Rational f_value = env.utility[i][theta][env.scf[theta]];
      result.rule = f_value >= ExpectedUtility(env, i, challenge, theta) ? Rule::kRule2a
                                                                         : Rule::kRule2b;
      return result;
    }
  }

  // Rule 3: the largest-numbered agent among those reporting the largest
  // integer wins.
  result.rule = Rule::kRule3;
  int winner = 0;
  for (int i = 1; i < num_agents; ++i) {
    if (profile[i].integer >= profile[winner].integer) winner = i;
  }
  result.winner = winner;
  return result;
}

Lottery MechanismOutcome(const CanonicalMechanism& mech, const std::vector<Message>& profile) {
  const Environment& env = mech.env;
  const RuleClassification c = ClassifyProfile(mech, profile);
  switch (c.rule) {
    case Rule::kRule1:
      return Lottery::Degenerate(env.scf[*c.agreed_state], env.NumOutcomes());
    case Rule::kRule2a: {
      const int i = *c.deviator;
      const int theta = *c.hypothetical_state;
      const int n = profile[i].integer;
      const Lottery& challenge = mech.sigma.lotteries[profile[i].plan[theta]];
      const Rational weight(n, n + 1);  // 1 - 1/(n+1)
      return MixLotteries(weight, challenge, mech.lemma.penalty[i][theta][theta]);
    }
    case Rule::kRule2b: {
      const int i = *c.deviator;
      const int theta = *c.hypothetical_state;
      return mech.lemma.penalty[i][theta][theta];
    }
    case Rule::kRule3: {
      const int j = *c.winner;
      const int n = profile[j].integer;
      const Rational weight(n, n + 1);
      return MixLotteries(weight, Lottery::Degenerate(profile[j].outcome, env.NumOutcomes()),
                          mech.lemma.worst_mix);
    }
  }
  throw std::logic_error("unreachable rule");
}

int BestChallengePlanEntry(const Environment& env, const SigmaSet& sigma, int agent, int state,
                           int true_state) {
  const Rational guard = env.utility[agent][state][env.scf[state]];
  int best = -1;
  Rational best_value;
  for (int k = 0; k < sigma.size(); ++k) {
    if (ExpectedUtility(env, agent, sigma.lotteries[k], state) > guard) continue;
    const Rational value = ExpectedUtility(env, agent, sigma.lotteries[k], true_state);
    if (best == -1 || value > best_value) {
      best = k;
      best_value = value;
    }
  }
  // f(state) itself is always in the guard set, so a best entry exists.
  return best;
}

int BestPureOutcome(const Environment& env, int agent, int true_state) {
  int best = 0;
  for (int z = 1; z < env.NumOutcomes(); ++z) {
    if (env.utility[agent][true_state][z] > env.utility[agent][true_state][best]) best = z;
  }
  return best;
}

namespace {

class CertificateBuilder {
 public:
  CertificateBuilder(const Environment& env, const CanonicalMechanism& mech)
      : env_(env), mech_(mech), active_(env) {}

  CertificateReport Run() {
    CertificateReport report;
    report.pass = true;
    for (int true_state = 0; true_state < env_.NumStates(); ++true_state) {
      StateCertificate cert = RunState(true_state);
      report.pass = report.pass && cert.pass;
      report.per_state.push_back(std::move(cert));
    }
    return report;
  }

 private:
  // u_i evaluated at the true state of the current block.
  Rational At(int agent, const Lottery& lottery, int state) const {
    return ExpectedUtility(env_, agent, lottery, state);
  }

  CertificateEntry MakeEntry(const std::string& label, const Rational& lhs, bool strict,
                             const Rational& rhs) const {
    CertificateEntry entry;
    entry.label = label;
    entry.lhs = FormatRational(lhs);
    entry.relation = strict ? ">" : ">=";
    entry.rhs = FormatRational(rhs);
    entry.pass = strict ? lhs > rhs : lhs >= rhs;
    return entry;
  }

  void Push(CertificateStep& step, CertificateEntry entry) {
    step.pass = step.pass && entry.pass;
    step.entries.push_back(std::move(entry));
  }

  std::vector<int> QuantifiedAgents(int true_state) const {
    if (mech_.variant == MechanismVariant::kTheorem1) {
      std::vector<int> all;
      for (int i = 0; i < env_.NumAgents(); ++i) all.push_back(i);
      return all;
    }
    return active_.AtState(true_state);
  }

  StateCertificate RunState(int true_state) {
    StateCertificate cert;
    cert.true_state = true_state;
    // Best-challenge selections for this true state.
    best_plan_.assign(env_.NumAgents(), std::vector<int>(env_.NumStates(), -1));
    best_outcome_.assign(env_.NumAgents(), -1);
    for (int i = 0; i < env_.NumAgents(); ++i) {
      best_outcome_[i] = BestPureOutcome(env_, i, true_state);
      for (int s = 0; s < env_.NumStates(); ++s) {
        best_plan_[i][s] = BestChallengePlanEntry(env_, mech_.sigma, i, s, true_state);
      }
    }

    cert.steps.push_back(Step1(true_state));
    cert.steps.push_back(Step2(true_state));
    CertificateStep step3;
    CertificateStep step4;
    if (mech_.variant == MechanismVariant::kTheorem1) {
      step3.step = 3;
      step3.name = "escalated integers are never best replies";
      step3.pass = cert.steps[1].pass;
      step3.note = "follows from step 2: any integer above 1 lands in rules 2-3";
      step4 = Theorem1Step4(true_state);
    } else {
      step3 = Theorem2Step3(true_state);
      step4.step = 4;
      step4.name = "every false state is deleted";
      step4.pass = step3.pass;
      step4.note = step3.pass ? "the elimination chain of step 3 covers all other states"
                              : "step 3 left undeleted states";
    }
    cert.steps.push_back(std::move(step3));
    cert.steps.push_back(std::move(step4));

    CertificateStep step5;
    step5.step = 5;
    step5.name = "only truthful agreement survives";
    step5.pass = cert.steps[1].pass && cert.steps[2].pass && cert.steps[3].pass;
    step5.note = "agreement on a blocked state would need the whistle-blower to join it";
    cert.steps.push_back(std::move(step5));

    cert.pass = true;
    for (const auto& step : cert.steps) cert.pass = cert.pass && step.pass;
    return cert;
  }

  CertificateStep Step1(int true_state) {
    CertificateStep step;
    step.step = 1;
    step.name = "truthful agreement is a strict-best-response equilibrium";
    step.pass = true;
    for (int i : QuantifiedAgents(true_state)) {
      const Rational truthful = env_.utility[i][true_state][env_.scf[true_state]];
      Push(step, MakeEntry("deviation to the penalty lottery, agent " + env_.agents[i], truthful,
                           /*strict=*/true,
                           At(i, mech_.lemma.penalty[i][true_state][true_state], true_state)));
    }
    if (mech_.variant == MechanismVariant::kTheorem2) {
      // A deviating dictator reaches rule 1 on their own state.
      for (int i : active_.AtState(true_state)) {
        for (int other = 0; other < env_.NumStates(); ++other) {
          if (other == true_state) continue;
          if (active_.AtState(other) != std::vector<int>{i}) continue;
          if (env_.scf[other] == env_.scf[true_state]) continue;
          const Rational truthful = env_.utility[i][true_state][env_.scf[true_state]];
          const Rational deviated = env_.utility[i][true_state][env_.scf[other]];
          Push(step, MakeEntry("dictator deviation of " + env_.agents[i] + " to " +
                                   env_.states[other],
                               truthful, /*strict=*/true, deviated));
        }
      }
    }
    return step;
  }

  CertificateStep Step2(int true_state) {
    CertificateStep step;
    step.step = 2;
    step.name = "no best reply reaches rules 2-3 (suprema over the integer dimension)";
    step.pass = true;
    for (int i : QuantifiedAgents(true_state)) {
      const Lottery best_pure = Lottery::Degenerate(best_outcome_[i], env_.NumOutcomes());
      const Rational top = At(i, best_pure, true_state);
      for (int s = 0; s < env_.NumStates(); ++s) {
        if (mech_.variant == MechanismVariant::kTheorem2 && !Contains(active_.AtState(s), i)) {
          continue;  // others reporting s already forms an agreement without i
        }
        const Lottery& challenge = mech_.sigma.lotteries[best_plan_[i][s]];
        const Rational challenge_value = At(i, challenge, true_state);
        Push(step, MakeEntry("contest beats the rule-2 plan payoff at " + env_.states[s] +
                                 ", agent " + env_.agents[i],
                             top, /*strict=*/false, challenge_value));
        Push(step, MakeEntry("rule-2 penalty tail stays below the best challenge at " +
                                 env_.states[s] + ", agent " + env_.agents[i],
                             challenge_value, /*strict=*/true,
                             At(i, mech_.lemma.penalty[i][s][s], true_state)));
      }
      Push(step, MakeEntry("rule-3 tail stays below the best pure outcome, agent " +
                               env_.agents[i],
                           top, /*strict=*/true, At(i, mech_.lemma.worst_mix, true_state)));
      for (int z = 0; z < env_.NumOutcomes(); ++z) {
        Push(step, MakeEntry("best pure outcome dominates " + env_.outcomes[z] + ", agent " +
                                 env_.agents[i],
                             top, /*strict=*/false,
                             Rational(env_.utility[i][true_state][z])));
      }
    }
    return step;
  }

  CertificateStep Theorem1Step4(int true_state) {
    CertificateStep step;
    step.step = 4;
    step.name = "agreement on a foreign block is blocked by a whistle-blower";
    step.pass = true;
    const Partition& partition = *mech_.partition;
    const int home_block = partition.BlockIndexOf(true_state);
    for (int b = 0; b < static_cast<int>(partition.blocks().size()); ++b) {
      if (b == home_block) continue;
      const std::vector<int>& block = partition.blocks()[b];
      int blower = -1;
      for (int j = 0; j < env_.NumAgents() && blower == -1; ++j) {
        bool all = true;
        for (int reported : block) {
          const Lottery& challenge = mech_.sigma.lotteries[best_plan_[j][reported]];
          const Rational profit = At(j, challenge, true_state);
          const Rational stay = env_.utility[j][true_state][env_.scf[reported]];
          if (!(profit > stay)) {
            all = false;
            break;
          }
        }
        if (all) blower = j;
      }
      if (blower == -1) {
        step.pass = false;
        CertificateEntry entry;
        entry.label = "no whistle-blower against the block of " + env_.states[block[0]];
        entry.relation = ">";
        entry.pass = false;
        step.entries.push_back(std::move(entry));
        continue;
      }
      for (int reported : block) {
        const Lottery& challenge = mech_.sigma.lotteries[best_plan_[blower][reported]];
        Push(step, MakeEntry("challenge stays credible at " + env_.states[reported] + ", agent " +
                                 env_.agents[blower],
                             Rational(env_.utility[blower][reported][env_.scf[reported]]),
                             /*strict=*/false, At(blower, challenge, reported)));
        Push(step, MakeEntry("challenge profits over f(" + env_.states[reported] + "), agent " +
                                 env_.agents[blower],
                             At(blower, challenge, true_state), /*strict=*/true,
                             Rational(env_.utility[blower][true_state][env_.scf[reported]])));
      }
    }
    return step;
  }

  CertificateStep Theorem2Step3(int true_state) {
    CertificateStep step;
    step.step = 3;
    step.name = "iterated deletion of false agreements over the Sigma menu";
    step.pass = true;
    std::vector<int> remaining;
    for (int s = 0; s < env_.NumStates(); ++s) remaining.push_back(s);
    while (remaining.size() > 1) {
      const std::vector<int> eligible = ActiveAgentsEvent(env_, remaining);
      int deleted = -1;
      int blower = -1;
      int sigma_index = -1;
      for (int candidate : remaining) {
        if (candidate == true_state) continue;
        for (int agent : eligible) {
          for (int k = 0; k < mech_.sigma.size() && sigma_index == -1; ++k) {
            const Lottery& entry = mech_.sigma.lotteries[k];
            if (At(agent, entry, candidate) <
                    env_.utility[agent][candidate][env_.scf[candidate]] &&
                At(agent, entry, true_state) >
                    env_.utility[agent][true_state][env_.scf[candidate]]) {
              sigma_index = k;
              blower = agent;
              deleted = candidate;
            }
          }
          if (deleted != -1) break;
        }
        if (deleted != -1) break;
      }
      if (deleted == -1) {
        step.pass = false;
        CertificateEntry entry;
        entry.label = "no deletable state among the remaining reports";
        entry.relation = ">";
        entry.pass = false;
        step.entries.push_back(std::move(entry));
        return step;
      }
      const Lottery& witness = mech_.sigma.lotteries[sigma_index];
      const Lottery best_pure = Lottery::Degenerate(best_outcome_[blower], env_.NumOutcomes());
      const Rational f_at_true = env_.utility[blower][true_state][env_.scf[deleted]];
      const Lottery& challenge = mech_.sigma.lotteries[best_plan_[blower][deleted]];
      Push(step, MakeEntry("contest tops the challenge for " + env_.states[deleted],
                           At(blower, best_pure, true_state), /*strict=*/false,
                           At(blower, challenge, true_state)));
      Push(step, MakeEntry("challenge tops the Sigma witness for " + env_.states[deleted],
                           At(blower, challenge, true_state), /*strict=*/false,
                           At(blower, witness, true_state)));
      Push(step, MakeEntry("Sigma witness profits over f(" + env_.states[deleted] + ")",
                           At(blower, witness, true_state), /*strict=*/true, f_at_true));
      if (active_.AtState(deleted) == std::vector<int>{blower}) {
        // Deviations from a dictator agreement may land in rule 1 elsewhere;
        // every challenge column must profit.
        for (int other = 0; other < env_.NumStates(); ++other) {
          const Lottery& other_challenge = mech_.sigma.lotteries[best_plan_[blower][other]];
          Push(step, MakeEntry("dictator case: challenge via " + env_.states[other] +
                                   " profits over f(" + env_.states[deleted] + ")",
                               At(blower, other_challenge, true_state), /*strict=*/true,
                               f_at_true));
        }
        Push(step, MakeEntry("dictator case: contest profits over f(" + env_.states[deleted] + ")",
                             At(blower, best_pure, true_state), /*strict=*/true, f_at_true));
      } else {
        Push(step, MakeEntry("deviator case: challenge profits over f(" + env_.states[deleted] +
                                 ")",
                             At(blower, challenge, true_state), /*strict=*/true, f_at_true));
        Push(step, MakeEntry("deviator case: contest profits over f(" + env_.states[deleted] + ")",
                             At(blower, best_pure, true_state), /*strict=*/true, f_at_true));
      }
      remaining.erase(std::find(remaining.begin(), remaining.end(), deleted));
    }
    return step;
  }

  const Environment& env_;
  const CanonicalMechanism& mech_;
  ActiveSets active_;
  std::vector<std::vector<int>> best_plan_;
  std::vector<int> best_outcome_;
};

}  // namespace

CertificateReport VerifyCertificates(const Environment& env, const CanonicalMechanism& mech) {
  CertificateBuilder builder(env, mech);
  return builder.Run();
}

}  // namespace ratimpl

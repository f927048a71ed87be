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

#include "ratimpl/report.h"

#include <sstream>

namespace ratimpl {

using nlohmann::ordered_json;

ordered_json LotteryToJson(const Environment& env, const Lottery& lottery) {
  ordered_json entry;
  for (int z = 0; z < env.NumOutcomes(); ++z) {
    if (lottery.probs[z] != 0) entry[env.outcomes[z]] = FormatRational(lottery.probs[z]);
  }
  return entry;
}

ordered_json PartitionToJson(const Environment& env, const Partition& partition) {
  ordered_json blocks = ordered_json::array();
  for (const auto& block : partition.blocks()) {
    ordered_json ids = ordered_json::array();
    for (int s : block) ids.push_back(env.states[s]);
    blocks.push_back(std::move(ids));
  }
  return blocks;
}

namespace {

ordered_json StateList(const Environment& env, const std::vector<int>& states) {
  ordered_json list = ordered_json::array();
  for (int s : states) list.push_back(env.states[s]);
  return list;
}

ordered_json RecordToJson(const Environment& env, const ObligationRecord& record) {
  ordered_json obj;
  if (record.agent.has_value()) obj["agent"] = env.agents[*record.agent];
  if (record.state.has_value()) obj["state"] = env.states[*record.state];
  if (record.true_state.has_value()) obj["true_state"] = env.states[*record.true_state];
  if (record.credibility_state.has_value()) {
    obj["credibility_state"] = env.states[*record.credibility_state];
  }
  if (record.outcome.has_value()) obj["outcome"] = env.outcomes[*record.outcome];
  if (!record.event.empty()) obj["event"] = StateList(env, record.event);
  if (!record.reported_block.empty()) {
    obj["reported_block"] = StateList(env, record.reported_block);
  }
  ordered_json qualifying = ordered_json::array();
  for (const auto& q : record.qualifying) {
    ordered_json one;
    one["agent"] = env.agents[q.agent];
    ordered_json plan;
    for (const auto& entry : q.plan) {
      plan[env.states[entry.state]] = LotteryToJson(env, entry.lottery);
    }
    one["plan"] = std::move(plan);
    qualifying.push_back(std::move(one));
  }
  obj["qualifying"] = std::move(qualifying);
  return obj;
}

}  // namespace

ordered_json AxiomReportToJson(const Environment& env, const AxiomReport& report) {
  ordered_json doc;
  doc["axiom"] = report.axiom;
  doc["holds"] = report.holds;
  if (report.partition.has_value()) doc["partition"] = PartitionToJson(env, *report.partition);
  ordered_json witnesses = ordered_json::array();
  for (const auto& record : report.witnesses) witnesses.push_back(RecordToJson(env, record));
  doc["witnesses"] = std::move(witnesses);
  ordered_json counterexamples = ordered_json::array();
  for (const auto& record : report.counterexamples) {
    counterexamples.push_back(RecordToJson(env, record));
  }
  doc["counterexamples"] = std::move(counterexamples);
  if (!report.eliminations.empty()) {
    ordered_json orders;
    for (const auto& [state, order] : report.eliminations) {
      if (!order.has_value()) {
        orders[env.states[state]] = nullptr;
        continue;
      }
      ordered_json steps = ordered_json::array();
      for (const auto& step : order->steps) {
        ordered_json one;
        one["deleted_state"] = env.states[step.state];
        one["agent"] = env.agents[step.agent];
        one["lottery"] = LotteryToJson(env, step.lottery);
        steps.push_back(std::move(one));
      }
      ordered_json entry;
      entry["order"] = std::move(steps);
      entry["final_state"] = env.states[order->final_state];
      orders[env.states[state]] = std::move(entry);
    }
    doc["eliminations"] = std::move(orders);
  }
  if (!env.notes.empty()) doc["notes"] = env.notes;
  return doc;
}

ordered_json CertificateReportToJson(const Environment& env, const CertificateReport& report) {
  ordered_json doc;
  doc["pass"] = report.pass;
  ordered_json per_state = ordered_json::array();
  for (const auto& cert : report.per_state) {
    ordered_json state_doc;
    state_doc["true_state"] = env.states[cert.true_state];
    state_doc["pass"] = cert.pass;
    ordered_json steps = ordered_json::array();
    for (const auto& step : cert.steps) {
      ordered_json step_doc;
      step_doc["step"] = step.step;
      step_doc["name"] = step.name;
      step_doc["pass"] = step.pass;
      if (!step.note.empty()) step_doc["note"] = step.note;
      ordered_json entries = ordered_json::array();
      for (const auto& entry : step.entries) {
        ordered_json entry_doc;
        entry_doc["label"] = entry.label;
        entry_doc["lhs"] = entry.lhs;
        entry_doc["relation"] = entry.relation;
        entry_doc["rhs"] = entry.rhs;
        entry_doc["pass"] = entry.pass;
        entries.push_back(std::move(entry_doc));
      }
      step_doc["entries"] = std::move(entries);
      steps.push_back(std::move(step_doc));
    }
    state_doc["steps"] = std::move(steps);
    per_state.push_back(std::move(state_doc));
  }
  doc["per_state"] = std::move(per_state);
  return doc;
}

ordered_json MechanismToJson(const CanonicalMechanism& mech) {
  const Environment& env = mech.env;
  ordered_json doc;
  doc["variant"] = mech.variant == MechanismVariant::kTheorem1 ? "theorem1" : "theorem2";
  doc["n_max"] = mech.n_max;
  if (mech.partition.has_value()) doc["partition"] = PartitionToJson(env, *mech.partition);
  if (!mech.active_sets.empty()) {
    ordered_json active;
    for (int s = 0; s < env.NumStates(); ++s) {
      ordered_json agents = ordered_json::array();
      for (int i : mech.active_sets[s]) agents.push_back(env.agents[i]);
      active[env.states[s]] = std::move(agents);
    }
    doc["active_sets"] = std::move(active);
  }
  ordered_json sigma = ordered_json::array();
  for (int k = 0; k < mech.sigma.size(); ++k) {
    ordered_json entry;
    switch (mech.sigma.provenance[k]) {
      case SigmaProvenance::kScfImage:
        entry["provenance"] = "scf-image";
        break;
      case SigmaProvenance::kPenalty:
        entry["provenance"] = "penalty";
        break;
      case SigmaProvenance::kBlockingWitness:
        entry["provenance"] = "blocking-witness";
        break;
    }
    entry["lottery"] = LotteryToJson(env, mech.sigma.lotteries[k]);
    sigma.push_back(std::move(entry));
  }
  doc["sigma"] = std::move(sigma);

  ordered_json lemma;
  lemma["epsilon"] = FormatRational(mech.lemma.epsilon);
  lemma["worst_mix"] = LotteryToJson(env, mech.lemma.worst_mix);
  ordered_json reward;
  ordered_json penalty;
  for (int i = 0; i < env.NumAgents(); ++i) {
    ordered_json reward_states;
    ordered_json penalty_states;
    for (int t = 0; t < env.NumStates(); ++t) {
      reward_states[env.states[t]] = LotteryToJson(env, mech.lemma.reward[i][t]);
      ordered_json inner;
      for (int t2 = 0; t2 < env.NumStates(); ++t2) {
        inner[env.states[t2]] = LotteryToJson(env, mech.lemma.penalty[i][t][t2]);
      }
      penalty_states[env.states[t]] = std::move(inner);
    }
    reward[env.agents[i]] = std::move(reward_states);
    penalty[env.agents[i]] = std::move(penalty_states);
  }
  lemma["reward"] = std::move(reward);
  lemma["penalty"] = std::move(penalty);
  doc["lemma"] = std::move(lemma);
  return doc;
}

ordered_json SurvivorsToJson(const FiniteGame& game, const SurvivorSets& sets) {
  ordered_json doc;
  ordered_json surviving;
  for (int p = 0; p < game.NumPlayers(); ++p) {
    ordered_json labels = ordered_json::array();
    for (int s : sets.surviving[p]) labels.push_back(game.strategies[p][s]);
    surviving[game.players[p]] = std::move(labels);
  }
  doc["surviving"] = std::move(surviving);
  ordered_json trace = ordered_json::array();
  for (const auto& event : sets.trace) {
    ordered_json one;
    one["round"] = event.round;
    one["player"] = game.players[event.player];
    one["strategy"] = game.strategies[event.player][event.strategy];
    trace.push_back(std::move(one));
  }
  doc["trace"] = std::move(trace);
  return doc;
}

ordered_json ImplementationToJson(const GameFamily& family, const ImplementationCheck& check) {
  const Environment& env = *family.base.env;
  ordered_json doc;
  doc["overall"] = check.overall;
  ordered_json per_state = ordered_json::array();
  for (size_t k = 0; k < check.states.size(); ++k) {
    ordered_json one;
    one["state"] = env.states[check.states[k]];
    one["implements"] = static_cast<bool>(check.per_state[k]);
    ordered_json survivors;
    for (int p = 0; p < family.base.NumPlayers(); ++p) {
      ordered_json labels = ordered_json::array();
      for (int s : check.survivors[k].surviving[p]) {
        labels.push_back(family.base.strategies[p][s]);
      }
      survivors[family.base.players[p]] = std::move(labels);
    }
    one["surviving"] = std::move(survivors);
    one["offending_profiles"] = check.offending[k].size();
    per_state.push_back(std::move(one));
  }
  doc["per_state"] = std::move(per_state);
  return doc;
}

std::string AxiomReportToText(const Environment& env, const AxiomReport& report) {
  std::ostringstream out;
  out << report.axiom << ": " << (report.holds ? "holds" : "FAILS") << "\n";
  if (report.partition.has_value()) {
    out << "  partition:";
    for (const auto& block : report.partition->blocks()) {
      out << " {";
      for (size_t k = 0; k < block.size(); ++k) {
        out << (k ? "," : "") << env.states[block[k]];
      }
      out << "}";
    }
    out << "\n";
  }
  for (const auto& record : report.counterexamples) {
    out << "  counterexample:";
    if (record.agent.has_value()) out << " agent=" << env.agents[*record.agent];
    if (record.state.has_value()) out << " state=" << env.states[*record.state];
    if (record.true_state.has_value()) out << " true_state=" << env.states[*record.true_state];
    if (record.outcome.has_value()) out << " outcome=" << env.outcomes[*record.outcome];
    if (!record.event.empty()) {
      out << " event={";
      for (size_t k = 0; k < record.event.size(); ++k) {
        out << (k ? "," : "") << env.states[record.event[k]];
      }
      out << "}";
    }
    if (!record.reported_block.empty()) {
      out << " reported_block={";
      for (size_t k = 0; k < record.reported_block.size(); ++k) {
        out << (k ? "," : "") << env.states[record.reported_block[k]];
      }
      out << "}";
    }
    out << "\n";
  }
  out << "  discharged " << report.witnesses.size() << " obligation(s), "
      << report.counterexamples.size() << " counterexample(s)\n";
  if (!env.notes.empty()) out << "  note: " << env.notes << "\n";
  return out.str();
}

std::string CertificateReportToText(const Environment& env, const CertificateReport& report) {
  std::ostringstream out;
  out << "certificates: " << (report.pass ? "all pass" : "FAIL") << "\n";
  for (const auto& cert : report.per_state) {
    out << "  true state " << env.states[cert.true_state] << ": "
        << (cert.pass ? "pass" : "FAIL") << "\n";
    for (const auto& step : cert.steps) {
      out << "    step " << step.step << " (" << step.name << "): "
          << (step.pass ? "pass" : "FAIL") << " [" << step.entries.size() << " inequalities]\n";
      if (!step.pass) {
        for (const auto& entry : step.entries) {
          if (!entry.pass) {
            out << "      " << entry.label << ": " << entry.lhs << " " << entry.relation << " "
                << entry.rhs << " is false\n";
          }
        }
      }
    }
  }
  return out.str();
}

std::string SurvivorsToText(const FiniteGame& game, const SurvivorSets& sets) {
  std::ostringstream out;
  for (int p = 0; p < game.NumPlayers(); ++p) {
    out << game.players[p] << " survivors (" << sets.surviving[p].size() << "/"
        << game.NumStrategies(p) << "):";
    for (int s : sets.surviving[p]) out << " " << game.strategies[p][s];
    out << "\n";
  }
  out << sets.trace.size() << " eliminations\n";
  return out.str();
}

}  // namespace ratimpl

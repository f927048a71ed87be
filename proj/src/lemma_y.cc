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

#include <algorithm>
#include <sstream>

namespace ratimpl {
namespace {

Lottery UniformAverage(const std::vector<const Lottery*>& parts) {
  Lottery result;
  result.probs.assign(parts[0]->probs.size(), Rational(0));
  const Rational weight(1, static_cast<long>(parts.size()));
  for (const Lottery* part : parts) {
    for (size_t z = 0; z < result.probs.size(); ++z) {
      result.probs[z] += weight * part->probs[z];
    }
  }
  return result;
}

}  // namespace

LemmaYSystem BuildLemmaY(const Environment& env) {
  const int num_agents = env.NumAgents();
  const int num_states = env.NumStates();
  const int num_outcomes = env.NumOutcomes();
  const ActiveSets active(env);

  LemmaYSystem system;

  // worst_outcome[i][t]: the strictly worst pure outcome under f(t) for an
  // active agent (lowest index on ties), the f-image itself otherwise.
  system.worst_outcome.assign(num_agents, std::vector<Lottery>(num_states));
  for (int i = 0; i < num_agents; ++i) {
    for (int t = 0; t < num_states; ++t) {
      const bool is_active =
          std::binary_search(active.AtState(t).begin(), active.AtState(t).end(), i);
      if (!is_active) {
        system.worst_outcome[i][t] = Lottery::Degenerate(env.scf[t], num_outcomes);
        continue;
      }
      int worst = 0;
      for (int z = 1; z < num_outcomes; ++z) {
        if (env.utility[i][t][z] < env.utility[i][t][worst]) worst = z;
      }
      system.worst_outcome[i][t] = Lottery::Degenerate(worst, num_outcomes);
    }
  }

  // worst_avg[i]: uniform average over states; replace_avg[i][t]: the same
  // average with the t slot replaced by the degenerate f(t).
  system.worst_avg.resize(num_agents);
  system.replace_avg.assign(num_agents, std::vector<Lottery>(num_states));
  for (int i = 0; i < num_agents; ++i) {
    std::vector<const Lottery*> parts;
    for (int t = 0; t < num_states; ++t) parts.push_back(&system.worst_outcome[i][t]);
    system.worst_avg[i] = UniformAverage(parts);
    for (int t = 0; t < num_states; ++t) {
      const Lottery f_image = Lottery::Degenerate(env.scf[t], num_outcomes);
      std::vector<const Lottery*> replaced = parts;
      replaced[t] = &f_image;
      system.replace_avg[i][t] = UniformAverage(replaced);
    }
  }

  // worst_mix: uniform average over agents; reward[i][t]: the same average
  // with agent i's slot replaced by replace_avg[i][t].
  {
    std::vector<const Lottery*> parts;
    for (int i = 0; i < num_agents; ++i) parts.push_back(&system.worst_avg[i]);
    system.worst_mix = UniformAverage(parts);
    system.reward.assign(num_agents, std::vector<Lottery>(num_states));
    for (int i = 0; i < num_agents; ++i) {
      for (int t = 0; t < num_states; ++t) {
        std::vector<const Lottery*> replaced = parts;
        replaced[i] = &system.replace_avg[i][t];
        system.reward[i][t] = UniformAverage(replaced);
      }
    }
  }

  // Epsilon: half the smallest positive threshold keeping every penalty
  // inequality strict. The mixture (1-e)*worst_outcome[i][t'] + e*B stays
  // strictly below f(t') at t' for active i as long as e*(B - L) < F - L.
  Rational epsilon_cap(1);
  for (int i = 0; i < num_agents; ++i) {
    for (int t_prime = 0; t_prime < num_states; ++t_prime) {
      const bool is_active = std::binary_search(active.AtState(t_prime).begin(),
                                                active.AtState(t_prime).end(), i);
      if (!is_active) continue;
      const Rational f_value =
          env.utility[i][t_prime][env.scf[t_prime]];
      const Rational low = ExpectedUtility(env, i, system.worst_outcome[i][t_prime], t_prime);
      for (int t = 0; t < num_states; ++t) {
        const Lottery& tail = (t == t_prime) ? system.worst_avg[i] : system.replace_avg[i][t];
        const Rational mix_value = ExpectedUtility(env, i, tail, t_prime);
        if (mix_value <= low) continue;
        const Rational threshold = (f_value - low) / (mix_value - low);
        epsilon_cap = std::min(epsilon_cap, threshold);
      }
    }
  }
  system.epsilon = epsilon_cap / 2;

  system.penalty.assign(
      num_agents, std::vector<std::vector<Lottery>>(num_states, std::vector<Lottery>(num_states)));
  for (int i = 0; i < num_agents; ++i) {
    for (int t = 0; t < num_states; ++t) {
      for (int t_prime = 0; t_prime < num_states; ++t_prime) {
        const Lottery& tail = (t == t_prime) ? system.worst_avg[i] : system.replace_avg[i][t];
        system.penalty[i][t][t_prime] =
            MixLotteries(Rational(1) - system.epsilon, system.worst_outcome[i][t_prime], tail);
      }
    }
  }

  const LemmaYCheck check = VerifyLemmaY(env, system);
  if (!check.ok) {
    throw CertificateFailure("lemma-y construction failed re-verification", check.failures);
  }
  return system;
}

LemmaYCheck VerifyLemmaY(const Environment& env, const LemmaYSystem& system) {
  LemmaYCheck check;
  const ActiveSets active(env);
  auto fail = [&](const std::string& family, int agent, int t, int t_prime) {
    std::ostringstream line;
    line << family << " violated for agent " << env.agents[agent] << " at (";
    line << env.states[t];
    if (t_prime >= 0) line << ", " << env.states[t_prime];
    line << ")";
    check.ok = false;
    check.failures.push_back(line.str());
  };

  for (int t = 0; t < env.NumStates(); ++t) {
    for (int i : active.AtState(t)) {
      ++check.instances_checked;
      if (!(ExpectedUtility(env, i, system.reward[i][t], t) >
            ExpectedUtility(env, i, system.worst_mix, t))) {
        fail("reward", i, t, -1);
      }
    }
  }
  for (int t_prime = 0; t_prime < env.NumStates(); ++t_prime) {
    for (int t = 0; t < env.NumStates(); ++t) {
      for (int i : active.AtState(t_prime)) {
        ++check.instances_checked;
        const Rational chosen = env.utility[i][t_prime][env.scf[t_prime]];
        if (!(chosen > ExpectedUtility(env, i, system.penalty[i][t][t_prime], t_prime))) {
          fail("penalty", i, t, t_prime);
        }
      }
    }
  }
  for (int t = 0; t < env.NumStates(); ++t) {
    for (int t_prime = 0; t_prime < env.NumStates(); ++t_prime) {
      if (t == t_prime) continue;
      for (int i : active.AtState(t)) {
        ++check.instances_checked;
        if (!(ExpectedUtility(env, i, system.penalty[i][t][t_prime], t) >
              ExpectedUtility(env, i, system.penalty[i][t_prime][t_prime], t))) {
          fail("ranking", i, t, t_prime);
        }
      }
    }
  }
  return check;
}

int SigmaSet::IndexOf(const Lottery& lottery) const {
  for (size_t k = 0; k < lotteries.size(); ++k) {
    if (lotteries[k] == lottery) return static_cast<int>(k);
  }
  return -1;
}

SigmaSet BuildSigma(const Environment& env, const LemmaYSystem& lemma,
                    const std::vector<Lottery>& witnesses) {
  SigmaSet sigma;
  auto add = [&sigma](const Lottery& lottery, SigmaProvenance provenance) {
    if (sigma.IndexOf(lottery) != -1) return;
    sigma.lotteries.push_back(lottery);
    sigma.provenance.push_back(provenance);
  };
  for (int t = 0; t < env.NumStates(); ++t) {
    add(Lottery::Degenerate(env.scf[t], env.NumOutcomes()), SigmaProvenance::kScfImage);
  }
  for (int i = 0; i < env.NumAgents(); ++i) {
    for (int t = 0; t < env.NumStates(); ++t) {
      for (int t_prime = 0; t_prime < env.NumStates(); ++t_prime) {
        add(lemma.penalty[i][t][t_prime], SigmaProvenance::kPenalty);
      }
    }
  }
  for (const Lottery& witness : witnesses) add(witness, SigmaProvenance::kBlockingWitness);
  return sigma;
}

}  // namespace ratimpl

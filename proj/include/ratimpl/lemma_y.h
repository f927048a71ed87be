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

#ifndef RATIMPL_LEMMA_Y_H_
#define RATIMPL_LEMMA_Y_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "ratimpl/environment.h"

namespace ratimpl {

// The lottery system behind both canonical mechanisms: a globally bad mixture
// worst_mix, per-(agent, state) reward lotteries strictly better than it for
// active agents, and penalty lotteries z_i(theta, theta') strictly worse than
// the f-image at theta' yet ranked so that lying about theta is detectable.
// Invariants, verified exactly at construction for all quantified instances:
//   reward:  u_i(reward[i][t], t)        > u_i(worst_mix, t)        for i active at t
//   penalty: u_i(f(t'), t')              > u_i(penalty[i][t][t'], t') for i active at t'
//   ranking: u_i(penalty[i][t][t'], t)   > u_i(penalty[i][t'][t'], t) for t != t', i active at t
struct LemmaYSystem {
  Lottery worst_mix;                                       // shared bad lottery
  std::vector<std::vector<Lottery>> reward;                // [agent][state]
  std::vector<std::vector<std::vector<Lottery>>> penalty;  // [agent][t][t']
  Rational epsilon;
  // Intermediates of the construction, kept for reports and tests.
  std::vector<std::vector<Lottery>> worst_outcome;  // [agent][state], degenerate
  std::vector<Lottery> worst_avg;                   // per agent, uniform average
  std::vector<std::vector<Lottery>> replace_avg;    // [agent][state]
};

struct CertificateFailure : std::runtime_error {
  explicit CertificateFailure(const std::string& message, std::vector<std::string> failed = {})
      : std::runtime_error(message), failures(std::move(failed)) {}
  std::vector<std::string> failures;
};

struct LemmaYCheck {
  bool ok = true;
  std::vector<std::string> failures;  // one line per violated inequality instance
  int instances_checked = 0;
};

// Constructive build following the uniform-average recipe, with epsilon set to
// half the smallest positive threshold that keeps every penalty inequality
// strict. Throws CertificateFailure if the built system fails re-verification
// (it cannot for a valid environment; the check still runs).
LemmaYSystem BuildLemmaY(const Environment& env);

// Exhaustive exact re-verification of all three inequality families.
LemmaYCheck VerifyLemmaY(const Environment& env, const LemmaYSystem& system);

enum class SigmaProvenance { kScfImage, kPenalty, kBlockingWitness };

// The finite lottery menu both canonical mechanisms draw plan entries from:
// every degenerate f-image, every penalty lottery, and one blocking witness
// per discharged axiom obligation, deduplicated in that order.
struct SigmaSet {
  std::vector<Lottery> lotteries;
  std::vector<SigmaProvenance> provenance;

  int IndexOf(const Lottery& lottery) const;
  int size() const { return static_cast<int>(lotteries.size()); }
};

SigmaSet BuildSigma(const Environment& env, const LemmaYSystem& lemma,
                    const std::vector<Lottery>& witnesses);

}  // namespace ratimpl

#endif  // RATIMPL_LEMMA_Y_H_

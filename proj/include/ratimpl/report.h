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

#ifndef RATIMPL_REPORT_H_
#define RATIMPL_REPORT_H_

#include <string>

#include "json.hpp"

#include "ratimpl/axioms.h"
#include "ratimpl/game.h"
#include "ratimpl/mechanism.h"

namespace ratimpl {

// JSON is the contract format: field order is fixed so reports are byte
// stable across runs given identical inputs.
nlohmann::ordered_json LotteryToJson(const Environment& env, const Lottery& lottery);
nlohmann::ordered_json PartitionToJson(const Environment& env, const Partition& partition);
nlohmann::ordered_json AxiomReportToJson(const Environment& env, const AxiomReport& report);
nlohmann::ordered_json CertificateReportToJson(const Environment& env,
                                               const CertificateReport& report);
nlohmann::ordered_json MechanismToJson(const CanonicalMechanism& mech);
nlohmann::ordered_json SurvivorsToJson(const FiniteGame& game, const SurvivorSets& sets);
nlohmann::ordered_json ImplementationToJson(const GameFamily& family,
                                            const ImplementationCheck& check);

// Human-oriented one-screen renderings.
std::string AxiomReportToText(const Environment& env, const AxiomReport& report);
std::string CertificateReportToText(const Environment& env, const CertificateReport& report);
std::string SurvivorsToText(const FiniteGame& game, const SurvivorSets& sets);

}  // namespace ratimpl

#endif  // RATIMPL_REPORT_H_

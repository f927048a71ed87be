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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ratimpl/axioms.h"
#include "ratimpl/environment.h"
#include "ratimpl/examples_suite.h"
#include "ratimpl/game.h"
#include "ratimpl/lemma_y.h"
#include "ratimpl/mechanism.h"
#include "ratimpl/report.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFails = 1;
constexpr int kExitUsage = 2;

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write to " + out_path);
  out << text;
}

ratimpl::Validation ParseValidation(const std::string& level) {
  if (level == "strict") return ratimpl::Validation::kStrict;
  if (level == "lenient") return ratimpl::Validation::kLenient;
  throw CLI::ValidationError("--validation must be strict or lenient");
}

struct CheckArgs {
  std::string env_path;
  std::string axiom = "all";
  std::string format = "text";
  std::string out;
  std::string validation = "lenient";
};

int RunCheck(const CheckArgs& args) {
  const ratimpl::Environment env =
      ratimpl::LoadEnvironmentFile(args.env_path, ParseValidation(args.validation));
  std::vector<std::string> ids;
  if (args.axiom == "all") {
    ids = ratimpl::AxiomIds();
  } else {
    if (!ratimpl::IsAxiomId(args.axiom)) {
      std::cerr << "unknown axiom id: " << args.axiom << "\n";
      return kExitUsage;
    }
    ids.push_back(args.axiom);
  }
  bool all_hold = true;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  std::string text;
  for (const auto& id : ids) {
    const ratimpl::AxiomReport report = ratimpl::RunAxiom(env, id);
    all_hold = all_hold && report.holds;
    if (args.format == "json") {
      reports.push_back(ratimpl::AxiomReportToJson(env, report));
    } else {
      text += ratimpl::AxiomReportToText(env, report);
    }
  }
  Emit(args.format == "json" ? reports.dump(2) : text, args.out);
  return all_hold ? kExitOk : kExitPropertyFails;
}

struct PartitionArgs {
  std::string env_path;
  std::string axiom = "smm-star-star";
  std::string format = "text";
  std::string out;
};

int RunPartition(const PartitionArgs& args) {
  if (args.axiom != "smm-star" && args.axiom != "smm-star-star" &&
      args.axiom != "sem-star-star") {
    std::cerr << "--axiom must be smm-star, smm-star-star or sem-star-star\n";
    return kExitUsage;
  }
  const ratimpl::Environment env = ratimpl::LoadEnvironmentFile(args.env_path);
  const ratimpl::AxiomReport report = ratimpl::RunAxiom(env, args.axiom);
  if (args.format == "json") {
    Emit(ratimpl::AxiomReportToJson(env, report).dump(2), args.out);
  } else {
    Emit(ratimpl::AxiomReportToText(env, report), args.out);
  }
  return report.holds ? kExitOk : kExitPropertyFails;
}

struct MechanismArgs {
  std::string env_path;
  std::string variant = "theorem2";
  int n_max = 8;
  std::string out;
};

ratimpl::MechanismVariant ParseVariant(const std::string& variant) {
  if (variant == "theorem1") return ratimpl::MechanismVariant::kTheorem1;
  if (variant == "theorem2") return ratimpl::MechanismVariant::kTheorem2;
  throw CLI::ValidationError("--variant must be theorem1 or theorem2");
}

int RunMechanism(const MechanismArgs& args) {
  const ratimpl::Environment env =
      ratimpl::LoadEnvironmentFile(args.env_path, ratimpl::Validation::kStrict);
  try {
    const ratimpl::MechanismBundle bundle =
        ratimpl::BuildMechanismPipeline(env, ParseVariant(args.variant), args.n_max);
    Emit(ratimpl::MechanismToJson(bundle.mechanism).dump(2), args.out);
    return kExitOk;
  } catch (const ratimpl::MechanismPreconditionError& e) {
    std::cerr << e.what() << "\n";
    for (const auto& report : e.failing_reports) {
      std::cerr << ratimpl::AxiomReportToText(env, report);
    }
    return kExitPropertyFails;
  }
}

struct CertifyArgs {
  std::string env_path;
  std::string variant = "theorem2";
  int n_max = 8;
  std::string format = "text";
  std::string out;
};

int RunCertify(const CertifyArgs& args) {
  const ratimpl::Environment env =
      ratimpl::LoadEnvironmentFile(args.env_path, ratimpl::Validation::kStrict);
  try {
    const ratimpl::MechanismBundle bundle =
        ratimpl::BuildMechanismPipeline(env, ParseVariant(args.variant), args.n_max);
    const ratimpl::CertificateReport report =
        ratimpl::VerifyCertificates(env, bundle.mechanism);
    if (args.format == "json") {
      Emit(ratimpl::CertificateReportToJson(env, report).dump(2), args.out);
    } else {
      Emit(ratimpl::CertificateReportToText(env, report), args.out);
    }
    return report.pass ? kExitOk : kExitPropertyFails;
  } catch (const ratimpl::MechanismPreconditionError& e) {
    std::cerr << e.what() << "\n";
    for (const auto& report : e.failing_reports) {
      std::cerr << ratimpl::AxiomReportToText(env, report);
    }
    return kExitPropertyFails;
  }
}

struct SolveArgs {
  std::string game_path;
  std::string state;
  std::string format = "text";
  std::string out;
};

int RunSolve(const SolveArgs& args) {
  ratimpl::GameFamily family = ratimpl::LoadGameFile(args.game_path);
  if (!args.state.empty()) {
    if (family.base.env == nullptr) {
      std::cerr << "--state needs an environment-bound game\n";
      return kExitUsage;
    }
    family.states = {family.base.env->StateIndex(args.state)};
  }
  if (family.base.env == nullptr) {
    const ratimpl::SurvivorSets sets = ratimpl::SolveRationalizable(family.base);
    if (args.format == "json") {
      Emit(ratimpl::SurvivorsToJson(family.base, sets).dump(2), args.out);
    } else {
      Emit(ratimpl::SurvivorsToText(family.base, sets), args.out);
    }
    return kExitOk;
  }
  const ratimpl::ImplementationCheck check = ratimpl::CheckImplementation(family);
  if (args.format == "json") {
    Emit(ratimpl::ImplementationToJson(family, check).dump(2), args.out);
  } else {
    std::string text;
    for (size_t k = 0; k < check.states.size(); ++k) {
      text += "state " + family.base.env->states[check.states[k]] + ": " +
              (check.per_state[k] ? "implements f" : "DOES NOT implement f") + "\n";
      text += ratimpl::SurvivorsToText(family.base, check.survivors[k]);
    }
    Emit(text, args.out);
  }
  return check.overall ? kExitOk : kExitPropertyFails;
}

struct ExamplesArgs {
  std::string corpus = "corpus";
  std::string format = "text";
  std::string out;
};

int RunExamples(const ExamplesArgs& args) {
  const ratimpl::ExamplesRun run = ratimpl::RunExamplesSuite(args.corpus);
  if (args.format == "json") {
    nlohmann::ordered_json doc;
    doc["all_pass"] = run.all_pass;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : run.rows) {
      nlohmann::ordered_json one;
      one["example"] = row.example;
      one["check"] = row.check;
      one["pass"] = row.pass;
      if (!row.flag.empty()) one["flag"] = row.flag;
      if (!row.detail.empty()) one["detail"] = row.detail;
      rows.push_back(std::move(one));
    }
    doc["rows"] = std::move(rows);
    Emit(doc.dump(2), args.out);
  } else {
    Emit(ratimpl::ExamplesRunToText(run), args.out);
  }
  return run.all_pass ? kExitOk : kExitPropertyFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for rationalizable implementation of social choice functions"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "run axiom checks on an environment file");
  check->add_option("env", check_args.env_path, "environment file")->required();
  check->add_option("--axiom", check_args.axiom, "axiom id or 'all'");
  check->add_option("--format", check_args.format, "json|text");
  check->add_option("--out", check_args.out, "output path");
  check->add_option("--validation", check_args.validation, "strict|lenient");

  PartitionArgs partition_args;
  CLI::App* partition = app.add_subcommand("partition", "search for a witness partition");
  partition->add_option("env", partition_args.env_path, "environment file")->required();
  partition->add_option("--axiom", partition_args.axiom,
                        "smm-star|smm-star-star|sem-star-star");
  partition->add_option("--format", partition_args.format, "json|text");
  partition->add_option("--out", partition_args.out, "output path");

  MechanismArgs mechanism_args;
  CLI::App* mechanism = app.add_subcommand("mechanism", "build a canonical mechanism file");
  mechanism->add_option("env", mechanism_args.env_path, "environment file")->required();
  mechanism->add_option("--variant", mechanism_args.variant, "theorem1|theorem2");
  mechanism->add_option("--nmax", mechanism_args.n_max, "integer truncation bound");
  mechanism->add_option("--out", mechanism_args.out, "output path");

  CertifyArgs certify_args;
  CLI::App* certify = app.add_subcommand("certify", "replay the sufficiency-proof certificates");
  certify->add_option("env", certify_args.env_path, "environment file")->required();
  certify->add_option("--variant", certify_args.variant, "theorem1|theorem2");
  certify->add_option("--nmax", certify_args.n_max, "integer truncation bound");
  certify->add_option("--format", certify_args.format, "json|text");
  certify->add_option("--out", certify_args.out, "output path");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "brute-force rationalizable sets of a game file");
  solve->add_option("game", solve_args.game_path, "game file")->required();
  solve->add_option("--state", solve_args.state, "solve a single state");
  solve->add_option("--format", solve_args.format, "json|text");
  solve->add_option("--out", solve_args.out, "output path");

  ExamplesArgs examples_args;
  CLI::App* examples = app.add_subcommand("examples", "run the bundled-corpus regression suite");
  examples->add_flag("--all", "run every expectation (default)");
  examples->add_option("--corpus", examples_args.corpus, "corpus directory");
  examples->add_option("--format", examples_args.format, "json|text");
  examples->add_option("--out", examples_args.out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return RunCheck(check_args);
    if (partition->parsed()) return RunPartition(partition_args);
    if (mechanism->parsed()) return RunMechanism(mechanism_args);
    if (certify->parsed()) return RunCertify(certify_args);
    if (solve->parsed()) return RunSolve(solve_args);
    if (examples->parsed()) return RunExamples(examples_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

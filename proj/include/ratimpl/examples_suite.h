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

#ifndef RATIMPL_EXAMPLES_SUITE_H_
#define RATIMPL_EXAMPLES_SUITE_H_

#include <string>
#include <vector>

namespace ratimpl {

// One regression expectation over the bundled corpus. A row can pass while
// carrying a flag: flags surface documented discrepancies between a source
// table and its narrative without failing the run.
struct ExampleExpectationRow {
  std::string example;
  std::string check;
  bool pass = false;
  std::string flag;
  std::string detail;
};

struct ExamplesRun {
  std::vector<ExampleExpectationRow> rows;
  bool all_pass = true;
};

// Runs every frozen expectation against the corpus directory (files
// ex1a.json .. ex7.json).
ExamplesRun RunExamplesSuite(const std::string& corpus_dir);

std::string ExamplesRunToText(const ExamplesRun& run);

}  // namespace ratimpl

#endif  // RATIMPL_EXAMPLES_SUITE_H_

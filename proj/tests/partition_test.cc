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

#include "ratimpl/partition.h"

#include <set>
#include <stdexcept>

#include "doctest.h"

namespace ratimpl {

TEST_CASE("set partition counts match Bell numbers") {
  const int bell[] = {1, 1, 2, 5, 15, 52};
  for (int n = 0; n <= 5; ++n) {
    CHECK(SetPartitions(n).size() == static_cast<size_t>(bell[n]));
  }
}

TEST_CASE("refinement enumeration multiplies per-block counts") {
  CHECK(EnumerateRefinements(Partition({{0, 1, 2}, {3}})).size() == 5);
  CHECK(EnumerateRefinements(Partition::Singletons(4)).size() == 1);
  CHECK(EnumerateRefinements(Partition({{0, 1}, {2, 3}})).size() == 4);
}

TEST_CASE("refinements come coarsest first and start at the base") {
  const Partition base({{0, 1, 2}, {3}});
  const std::vector<Partition> refinements = EnumerateRefinements(base);
  CHECK(refinements.front() == base);
  size_t previous = refinements.front().blocks().size();
  std::set<std::vector<std::vector<int>>> seen;
  for (const Partition& p : refinements) {
    CHECK(p.blocks().size() >= previous);
    previous = p.blocks().size();
    CHECK(p.Refines(base));
    CHECK(seen.insert(p.blocks()).second);  // no duplicates
  }
}

TEST_CASE("canonical form sorts blocks by least element") {
  const Partition p({{3}, {2, 0}, {1}});
  CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
  CHECK(p.BlockIndexOf(2) == 0);
  CHECK(p.SameBlock(0, 2));
  CHECK_FALSE(p.SameBlock(0, 1));
}

TEST_CASE("invalid block systems are rejected") {
  CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({{0}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({{0}, {}}), std::invalid_argument);
}

TEST_CASE("weak refinement ordering") {
  const Partition coarse({{0, 1, 2, 3}});
  const Partition mid({{0, 1}, {2, 3}});
  CHECK(mid.Refines(coarse));
  CHECK(mid.Refines(mid));
  CHECK_FALSE(coarse.Refines(mid));
  CHECK(Partition::Singletons(4).Refines(mid));
}

}  // namespace ratimpl

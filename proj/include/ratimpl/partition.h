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

#ifndef RATIMPL_PARTITION_H_
#define RATIMPL_PARTITION_H_

#include <vector>

namespace ratimpl {

// A partition of {0, ..., n-1} in canonical form: every block sorted
// ascending, blocks ordered by their smallest element.
class Partition {
 public:
  Partition() = default;
  // Canonicalizes the given blocks. Throws std::invalid_argument if they are
  // not disjoint, nonempty and covering 0..n-1 for some n.
  explicit Partition(std::vector<std::vector<int>> blocks);

  static Partition Singletons(int n);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int num_elements() const { return num_elements_; }
  int BlockIndexOf(int element) const { return block_of_[element]; }
  const std::vector<int>& BlockOf(int element) const { return blocks_[block_of_[element]]; }
  bool SameBlock(int a, int b) const { return block_of_[a] == block_of_[b]; }

  // True when every block of *this* lies inside one block of `coarser`
  // (weak refinement: a partition refines itself).
  bool Refines(const Partition& coarser) const;

  bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }
  bool operator<(const Partition& other) const;  // canonical order, for sorting

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
  int num_elements_ = 0;
};

// Every partition refining `base` (including `base` itself), coarsest first:
// ordered by total number of blocks, ties broken by canonical block order.
// Refinements of a partition are products of set partitions of its blocks.
std::vector<Partition> EnumerateRefinements(const Partition& base);

// Set partitions of {0..n-1}, used by EnumerateRefinements and by tests
// (Bell-number counts).
std::vector<std::vector<std::vector<int>>> SetPartitions(int n);

}  // namespace ratimpl

#endif  // RATIMPL_PARTITION_H_

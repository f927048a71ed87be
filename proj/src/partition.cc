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

#include <algorithm>
#include <stdexcept>

namespace ratimpl {

Partition::Partition(std::vector<std::vector<int>> blocks) {
  for (auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("partition block is empty");
    std::sort(block.begin(), block.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  int count = 0;
  for (const auto& block : blocks) count += static_cast<int>(block.size());
  num_elements_ = count;
  block_of_.assign(count, -1);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    for (int e : blocks[b]) {
      if (e < 0 || e >= count || block_of_[e] != -1) {
        throw std::invalid_argument("partition blocks are not disjoint covering sets");
      }
      block_of_[e] = b;
    }
  }
  blocks_ = std::move(blocks);
}

Partition Partition::Singletons(int n) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  return Partition(std::move(blocks));
}

bool Partition::Refines(const Partition& coarser) const {
  if (num_elements_ != coarser.num_elements()) return false;
  for (const auto& block : blocks_) {
    const int target = coarser.BlockIndexOf(block[0]);
    for (int e : block) {
      if (coarser.BlockIndexOf(e) != target) return false;
    }
  }
  return true;
}

bool Partition::operator<(const Partition& other) const {
  if (blocks_.size() != other.blocks_.size()) return blocks_.size() < other.blocks_.size();
  return blocks_ < other.blocks_;
}

std::vector<std::vector<std::vector<int>>> SetPartitions(int n) {
  std::vector<std::vector<std::vector<int>>> result;
  std::vector<std::vector<int>> current;
  // Standard recursion: element k joins an existing block or opens a new one.
  auto recurse = [&](auto&& self, int k) -> void {
    if (k == n) {
      result.push_back(current);
      return;
    }
    // Index-based loop: recursion grows and shrinks `current` past the
    // existing blocks, so references into it must not be held across calls.
    const size_t existing = current.size();
    for (size_t b = 0; b < existing; ++b) {
      current[b].push_back(k);
      self(self, k + 1);
      current[b].pop_back();
    }
    current.push_back({k});
    self(self, k + 1);
    current.pop_back();
  };
  recurse(recurse, 0);
  return result;
}

std::vector<Partition> EnumerateRefinements(const Partition& base) {
  // Per-block local refinements, then all cross products.
  std::vector<std::vector<std::vector<std::vector<int>>>> per_block;
  for (const auto& block : base.blocks()) {
    const int k = static_cast<int>(block.size());
    std::vector<std::vector<std::vector<int>>> local = SetPartitions(k);
    // Map local indices back to the block's states.
    for (auto& partition : local) {
      for (auto& sub : partition) {
        for (int& e : sub) e = block[e];
      }
    }
    per_block.push_back(std::move(local));
  }

  std::vector<Partition> result;
  std::vector<int> choice(per_block.size(), 0);
  while (true) {
    std::vector<std::vector<int>> blocks;
    for (size_t b = 0; b < per_block.size(); ++b) {
      for (const auto& sub : per_block[b][choice[b]]) blocks.push_back(sub);
    }
    result.push_back(Partition(std::move(blocks)));
    int pos = static_cast<int>(per_block.size()) - 1;
    while (pos >= 0) {
      if (++choice[pos] < static_cast<int>(per_block[pos].size())) break;
      choice[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace ratimpl

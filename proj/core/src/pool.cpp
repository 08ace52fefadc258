// Copyright 2026 The mbsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mbsq/solvers.hpp"

#include <algorithm>

namespace mbsq {

void PoolCollector::insert(std::span<const std::uint8_t> bits, double energy) {
  if (!admits(energy)) return;
  Assignment key(bits.begin(), bits.end());
  if (seen_.count(key)) return;
  ordered_.emplace(energy, key);
  seen_.emplace(std::move(key), energy);
  if (ordered_.size() > capacity_) {
    auto last = std::prev(ordered_.end());
    seen_.erase(last->second);
    ordered_.erase(last);
  }
}

void PoolCollector::merge(const SolutionPool& pool) {
  for (const auto& e : pool.entries) insert(e.bits, e.energy);
}

SolutionPool PoolCollector::release() {
  SolutionPool pool;
  pool.entries.reserve(ordered_.size());
  for (auto& [energy, bits] : ordered_) pool.entries.push_back({bits, energy});
  ordered_.clear();
  seen_.clear();
  return pool;
}

SolutionPool top_k(const SolutionPool& pool, std::size_t k) {
  SolutionPool out;
  out.wall_time_seconds = pool.wall_time_seconds;
  out.evaluations = pool.evaluations;
  const auto count = std::min(k, pool.entries.size());
  out.entries.assign(pool.entries.begin(), pool.entries.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

}  // namespace mbsq

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

#include "mbsq/postprocess.hpp"

#include <stdexcept>

namespace mbsq {

std::optional<Solution> select_best_feasible(const SolutionPool& pool, const VarRegistry& registry,
                                             const Instance& instance,
                                             const FullModelParams& params, std::size_t k) {
  const auto x_vars = registry.count(VarFamily::kX);
  if (x_vars != static_cast<std::size_t>(instance.cells()) * instance.beams())
    throw std::invalid_argument("select_best_feasible: registry does not match instance shape");

  std::optional<Solution> best;
  const auto candidates = top_k(pool, k);
  for (std::size_t rank = 0; rank < candidates.entries.size(); ++rank) {
    const auto& entry = candidates.entries[rank];
    auto selection = extract_selection(registry, entry.bits, instance.cells());
    auto report = check_feasibility_full(instance, selection, params);
    if (!report.cardinality_ok) continue;
    const int objective = report.objective.count;
    if (best && (objective < best->objective ||
                 (objective == best->objective && entry.energy >= best->energy)))
      continue;
    best = Solution{std::move(selection), objective, entry.energy, true,
                    std::move(report.objective), rank};
  }
  return best;
}

}  // namespace mbsq

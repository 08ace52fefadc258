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

#pragma once

#include <cstddef>
#include <optional>

#include "mbsq/full_model.hpp"
#include "mbsq/instance.hpp"
#include "mbsq/registry.hpp"
#include "mbsq/solvers.hpp"

namespace mbsq {

/// Default number of pool entries inspected by post-selection.
inline constexpr std::size_t kDefaultTopK = 100;

struct Solution {
  BeamSelection selection;
  /// Satisfied-grid count under the full model semantics.
  int objective = 0;
  /// Energy of the source assignment in the model that produced it.
  double energy = 0.0;
  bool feasible = false;
  ObjectiveResult diagnostics;
  /// Position of the source entry in the pool.
  std::size_t source_rank = 0;
};

/// Decodes the top-k pool entries, keeps those whose selection respects the
/// per-cell beam budget, and returns the one with the largest true
/// objective (ties: lower energy, then earlier pool position).
std::optional<Solution> select_best_feasible(const SolutionPool& pool, const VarRegistry& registry,
                                             const Instance& instance,
                                             const FullModelParams& params,
                                             std::size_t k = kDefaultTopK);

}  // namespace mbsq

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
#include <cstdint>
#include <span>
#include <vector>

#include "mbsq/qubo.hpp"

namespace mbsq {

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

/// Max-Cut image of an Ising model. Node i < spins mirrors spin i; when the
/// model has fields an extra ancilla node (index `spins`) carries them and
/// is pinned to the +1 side.
///
/// For every spin configuration: H(σ) = energy_constant - energy_scale * cut.
struct MaxCutGraph {
  std::size_t nodes = 0;
  std::vector<WeightedEdge> edges;
  bool has_ancilla = false;
  double energy_constant = 0.0;
  double energy_scale = 2.0;

  std::size_t spins() const noexcept { return has_ancilla ? nodes - 1 : nodes; }
};

/// One side flag per node (0 or 1).
using Partition = std::vector<std::uint8_t>;

MaxCutGraph ising_to_maxcut(const IsingModel& model);

/// Partition with the listed nodes on side 1; throws on unknown node ids.
Partition partition_from_side(std::size_t nodes, std::span<const std::size_t> side_one);
/// σ_i = +1 on side 1; the ancilla, when present, goes to side 1.
Partition partition_from_spins(const MaxCutGraph& graph, std::span<const std::int8_t> spins);

/// Total weight of edges whose endpoints lie on different sides.
double cut_value(const MaxCutGraph& graph, std::span<const std::uint8_t> partition);

}  // namespace mbsq

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

#include "mbsq/maxcut.hpp"

#include <stdexcept>
#include <string>

namespace mbsq {

MaxCutGraph ising_to_maxcut(const IsingModel& model) {
  // With the ancilla pinned at +1 a field is a coupling to the ancilla, so
  // H = c - Σ_e J_e σ_u σ_v. Using σ_u σ_v = 1 - 2[e cut] and w_e = -J_e:
  // H = (c + Σ_e w_e) - 2 Σ_{e cut} w_e.
  MaxCutGraph graph;
  graph.has_ancilla = model.has_fields();
  graph.nodes = model.size() + (graph.has_ancilla ? 1 : 0);
  double weight_sum = 0.0;
  for (const auto& [key, j] : model.couplings()) {
    graph.edges.push_back({key.first, key.second, -j});
    weight_sum += -j;
  }
  if (graph.has_ancilla) {
    const std::size_t ancilla = model.size();
    const auto& h = model.fields();
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] == 0.0) continue;
      graph.edges.push_back({i, ancilla, -h[i]});
      weight_sum += -h[i];
    }
  }
  graph.energy_constant = model.offset() + weight_sum;
  graph.energy_scale = 2.0;
  return graph;
}

Partition partition_from_side(std::size_t nodes, std::span<const std::size_t> side_one) {
  Partition p(nodes, 0);
  for (auto node : side_one) {
    if (node >= nodes) throw std::out_of_range("partition: unknown node " + std::to_string(node));
    p[node] = 1;
  }
  return p;
}

Partition partition_from_spins(const MaxCutGraph& graph, std::span<const std::int8_t> spins) {
  if (spins.size() != graph.spins())
    throw std::invalid_argument("partition_from_spins: spin count does not match graph");
  Partition p(graph.nodes, 1);
  for (std::size_t i = 0; i < spins.size(); ++i) p[i] = spins[i] > 0 ? 1 : 0;
  return p;
}

double cut_value(const MaxCutGraph& graph, std::span<const std::uint8_t> partition) {
  if (partition.size() != graph.nodes)
    throw std::invalid_argument("cut_value: partition must cover all " +
                                std::to_string(graph.nodes) + " nodes");
  double cut = 0.0;
  for (const auto& e : graph.edges)
    if (partition[e.u] != partition[e.v]) cut += e.weight;
  return cut;
}

}  // namespace mbsq

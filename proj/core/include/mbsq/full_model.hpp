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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbsq/builder.hpp"
#include "mbsq/instance.hpp"
#include "mbsq/qubo.hpp"
#include "mbsq/registry.hpp"

namespace mbsq {

/// Thresholds are in scaled-integer RSRP units.
struct FullModelParams {
  std::int64_t delta1 = 0;
  std::int64_t delta2 = 0;
  int r = 1;
  /// Penalty weight; nullopt selects the default m + 1.
  std::optional<double> lambda;

  double lambda_for(const Instance& instance) const {
    return lambda.value_or(static_cast<double>(instance.grids() + 1));
  }
};

/// Throws std::invalid_argument when the parameters violate
/// 0 <= delta <= M, 1 <= r <= n or lambda > 0.
void validate(const FullModelParams& params, const Instance& instance);

/// Selected beams per cell, each list ascending.
struct BeamSelection {
  std::vector<std::vector<int>> beams;

  BeamSelection() = default;
  explicit BeamSelection(int cells) : beams(cells) {}

  int cells() const noexcept { return static_cast<int>(beams.size()); }
  std::size_t total() const;
  bool selected(int cell, int beam) const;

  friend auto operator<=>(const BeamSelection&, const BeamSelection&) = default;
  friend bool operator==(const BeamSelection&, const BeamSelection&) = default;
};

enum class GridFailure { kNone, kCoverage, kInterference };

struct GridDiagnostics {
  /// c_ij per covering cell, in coverage order.
  std::vector<std::int64_t> c;
  std::int64_t a = 0;
  /// Second-largest c_ij counting multiplicity; nullopt when |V_i| < 2.
  std::optional<std::int64_t> b;
  bool z = false;
  GridFailure failure = GridFailure::kNone;
};

struct ObjectiveResult {
  int count = 0;
  std::vector<GridDiagnostics> grids;
};

/// True objective of a selection: number of grids whose best received
/// power reaches delta1 and beats the runner-up cell by at least delta2.
/// Cardinality is not checked. Throws std::out_of_range on bad indices.
ObjectiveResult exact_objective(const Instance& instance, const BeamSelection& selection,
                                std::int64_t delta1, std::int64_t delta2);

struct OracleResult {
  BeamSelection best;
  int count = 0;
};

/// Largest search space brute_force_selection accepts.
inline constexpr double kBruteForceLimit = 1e7;

/// Exhaustive search over all per-cell subsets of size <= r. Ties resolve
/// to the lexicographically smallest selection.
OracleResult brute_force_selection(const Instance& instance, const FullModelParams& params);

/// Registry indices of every variable family of the full model.
struct FullVarLayout {
  std::vector<std::vector<std::size_t>> x;                      // [cell][beam]
  std::vector<std::size_t> z;                                   // [grid]
  std::vector<std::vector<std::vector<std::size_t>>> d;         // [grid][slot][beam]
  std::vector<std::vector<std::size_t>> p;                      // [grid][slot]
  std::vector<std::vector<std::size_t>> q;                      // [grid][slot], empty if |V_i| < 2
  std::vector<BinaryInteger> a;                                 // [grid]
  std::vector<std::optional<BinaryInteger>> b;                  // [grid]
  std::vector<std::vector<BinaryInteger>> c;                    // [grid][slot]
  int value_bits = 0;
};

struct FullModel {
  BuiltModel model;
  FullVarLayout layout;
  FullModelParams params;

  const Qubo& qubo() const noexcept { return model.qubo; }
  const VarRegistry& registry() const noexcept { return model.registry; }
};

/// Penalty QUBO of the full beam-selection problem:
/// minimize -Σ z_i + lambda·Σ(constraint residual)².
FullModel build_full_model(const Instance& instance, const FullModelParams& params);

/// Reads the x(j,k) bits of any beam-selection registry.
BeamSelection extract_selection(const VarRegistry& registry, std::span<const std::uint8_t> x,
                                int cells);

struct DecodedFull {
  BeamSelection selection;
  ObjectiveResult objective;
  double energy = 0.0;
  /// energy + count: zero exactly when the assignment is a consistent
  /// encoding of its selection.
  double penalty_residual = 0.0;
};

DecodedFull decode_full(std::span<const std::uint8_t> x, const FullModel& model,
                        const Instance& instance);

/// Assignment encoding `selection` with every auxiliary variable and slack
/// set to its analytic value (lowest index wins among tied maxima).
Assignment full_witness(const FullModel& model, const Instance& instance,
                        const BeamSelection& selection);

struct FeasibilityReport {
  std::vector<int> beams_per_cell;
  std::vector<bool> cell_ok;
  bool cardinality_ok = true;
  ObjectiveResult objective;
};

FeasibilityReport check_feasibility_full(const Instance& instance, const BeamSelection& selection,
                                         const FullModelParams& params);

}  // namespace mbsq

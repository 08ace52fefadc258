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
#include "mbsq/full_model.hpp"
#include "mbsq/instance.hpp"

namespace mbsq {

/// Coverage-threshold-only variant: no interference gap, no big-M
/// linearization of the maxima.
struct SimplifiedModelParams {
  std::int64_t delta1 = 0;
  int r = 1;
  /// nullopt selects m + 1.
  std::optional<double> lambda;

  double lambda_for(const Instance& instance) const {
    return lambda.value_or(static_cast<double>(instance.grids() + 1));
  }
};

void validate(const SimplifiedModelParams& params, const Instance& instance);

struct SimplifiedVarLayout {
  std::vector<std::vector<std::size_t>> x;  // [cell][beam]
  std::vector<std::size_t> z;               // [grid]
  std::vector<BinaryInteger> coverage_slack; // [grid]
  std::vector<BinaryInteger> budget_slack;   // [cell]
};

struct SimplifiedModel {
  BuiltModel model;
  SimplifiedVarLayout layout;
  SimplifiedModelParams params;

  const Qubo& qubo() const noexcept { return model.qubo; }
  const VarRegistry& registry() const noexcept { return model.registry; }
};

/// minimize -Σ z_i + λ[Σ_i (z_i + slack1_i - Σ x_jk s̄_ijk)² + Σ_j (Σ_k x_jk + slack2_j - r)²]
SimplifiedModel build_simplified_model(const Instance& instance,
                                       const SimplifiedModelParams& params);

struct BitCount {
  /// m + nv + m⌈log2(nv)⌉ + v⌈log2 r⌉, as published for this model.
  long long formula = 0;
  /// Variables build_simplified_model emits for the same dimensions when
  /// every grid is covered by every cell.
  long long registry = 0;
};

BitCount bit_count(long long m, long long n, long long v, long long r);

struct DecodedSimplified {
  BeamSelection selection;
  std::vector<std::uint8_t> z;
  double energy = 0.0;
  /// energy + Σ z: the penalty part of the energy.
  double penalty_residual = 0.0;
};

DecodedSimplified decode_simplified(std::span<const std::uint8_t> x, const SimplifiedModel& model,
                                    const Instance& instance);

}  // namespace mbsq

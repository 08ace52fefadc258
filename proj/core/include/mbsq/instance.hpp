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
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mbsq/errors.hpp"

namespace mbsq {

/// One raw measurement: RSRP of `beam_id` of `cell_id` observed at `grid_id`.
struct RsrpRecord {
  std::uint64_t grid_id = 0;
  std::uint64_t cell_id = 0;
  std::uint64_t beam_id = 0;
  double rsrp_dbm = 0.0;

  friend bool operator==(const RsrpRecord&, const RsrpRecord&) = default;
};

/// Affine map from dBm to the non-negative integer units the models use:
/// scaled = round((dbm + offset) * scale).
struct ScalingParams {
  double offset = 0.0;
  double scale = 10.0;

  std::int64_t to_scaled(double dbm) const;
  double to_dbm(std::int64_t scaled) const;
  /// Converts a dB difference (no offset) to scaled units.
  std::int64_t gap_to_scaled(double db) const;

  friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

/// Immutable MBS problem instance.
///
/// Grids, cells and beams are dense 0-based indices. `coverage(i)` lists the
/// covering cells of grid i in ascending order; RSRP values are stored per
/// (grid, coverage slot, beam). A beam that never reaches a grid is absent
/// (not zero) and is excluded from every maximum.
class Instance {
 public:
  static constexpr std::int32_t kAbsent = -1;

  Instance() = default;

  /// `values[i][slot][k]` for slot indexing `coverage[i]`; kAbsent marks a
  /// missing measurement. Validates every invariant and computes M.
  Instance(int m, int v, int n, std::vector<std::vector<int>> coverage,
           std::vector<std::vector<std::vector<std::int32_t>>> values,
           ScalingParams scaling);

  int grids() const noexcept { return m_; }
  int cells() const noexcept { return v_; }
  int beams() const noexcept { return n_; }
  std::int32_t big_m() const noexcept { return big_m_; }
  const ScalingParams& scaling() const noexcept { return scaling_; }

  const std::vector<int>& coverage(int grid) const { return coverage_.at(grid); }
  /// Position of `cell` in coverage(grid), or nullopt when it does not cover.
  std::optional<int> slot_of(int grid, int cell) const;

  /// Scaled RSRP of beam k of the slot-th covering cell at grid i.
  std::optional<std::int32_t> rsrp(int grid, int slot, int beam) const;
  /// Same, addressed by cell id; nullopt if the cell does not cover the grid.
  std::optional<std::int32_t> rsrp_by_cell(int grid, int cell, int beam) const;
  /// Raw storage row (kAbsent for missing) for fast inner loops.
  const std::vector<std::int32_t>& rsrp_row(int grid, int slot) const {
    return values_.at(grid).at(slot);
  }

  /// Number of defined (present) entries.
  std::size_t defined_entries() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int m_ = 0;
  int v_ = 0;
  int n_ = 0;
  std::vector<std::vector<int>> coverage_;
  std::vector<std::vector<std::vector<std::int32_t>>> values_;
  std::int32_t big_m_ = 0;
  ScalingParams scaling_;
};

/// Reads `grid_id,cell_id,beam_id,rsrp_dbm` CSV. Throws ParseError.
std::vector<RsrpRecord> parse_records(std::istream& source);

/// Writes the instance back as dBm records in the same CSV layout.
void write_records_csv(const Instance& instance, std::ostream& out);

/// Builds an instance from raw records, re-indexing ids densely. When
/// `scaling` is nullopt the offset is fitted to -min(rsrp_dbm) with scale 10.
Instance build_instance(const std::vector<RsrpRecord>& records,
                        std::optional<ScalingParams> scaling = std::nullopt);

/// s̄: 1 where the entry is present and >= delta1, else 0. Indexed like
/// Instance storage: [grid][slot][beam].
using BinaryTensor = std::vector<std::vector<std::vector<std::uint8_t>>>;
BinaryTensor binarize(const Instance& instance, std::int64_t delta1);

struct SyntheticSpec {
  int m = 5;
  int v = 5;
  int n = 5;
  int min_cells_per_grid = 2;
  int max_cells_per_grid = 2;
  std::int32_t rsrp_min = 0;
  std::int32_t rsrp_max = 100;
  std::uint64_t seed = 1;
  /// Allows min_cells_per_grid == 1.
  bool allow_single_cell = false;
  ScalingParams scaling{140.0, 10.0};
};

/// Deterministic synthetic instance: each grid draws |V_i| uniformly from
/// [min_cells_per_grid, max_cells_per_grid], then V_i uniformly, then every
/// s_ijk uniformly from [rsrp_min, rsrp_max].
Instance generate_synthetic(const SyntheticSpec& spec);

}  // namespace mbsq

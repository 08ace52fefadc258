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
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mbsq/qubo.hpp"

namespace mbsq {

struct PoolEntry {
  Assignment bits;
  double energy = 0.0;
};

/// Distinct solver outputs, best (lowest energy) first. Equal energies are
/// ordered lexicographically by assignment.
struct SolutionPool {
  std::vector<PoolEntry> entries;
  double wall_time_seconds = 0.0;
  std::uint64_t evaluations = 0;

  bool empty() const noexcept { return entries.empty(); }
  const PoolEntry& best() const { return entries.front(); }
};

/// Bounded collector that keeps the `capacity` best distinct assignments.
class PoolCollector {
 public:
  explicit PoolCollector(std::size_t capacity) : capacity_(capacity) {}

  /// Cheap pre-check: could an entry with this energy be kept?
  bool admits(double energy) const {
    return capacity_ > 0 && (ordered_.size() < capacity_ || energy <= ordered_.rbegin()->first);
  }
  void insert(std::span<const std::uint8_t> bits, double energy);
  void merge(const SolutionPool& pool);

  std::size_t size() const noexcept { return ordered_.size(); }
  SolutionPool release();

 private:
  std::size_t capacity_;
  std::set<std::pair<double, Assignment>> ordered_;
  std::map<Assignment, double> seen_;
};

/// First min(k, size) entries, order preserved.
SolutionPool top_k(const SolutionPool& pool, std::size_t k);

// ---------------------------------------------------------------------------
// Exact

struct ExactOptions {
  /// Entries kept by exhaustive enumeration.
  std::size_t pool_capacity = 100;
  /// Models up to this size are enumerated exhaustively.
  std::size_t max_enumeration_size = 30;
  /// Largest factor scope allowed for variable elimination on bigger models.
  std::size_t max_elimination_width = 24;
};

/// Exact global minimum. Models with size <= max_enumeration_size are
/// enumerated (ties: lexicographically smallest assignment; the pool holds
/// the best `pool_capacity` assignments). Larger models are minimized by
/// variable elimination along a min-fill order and return only the optimum.
/// Throws std::invalid_argument when neither route applies.
SolutionPool solve_exact(const Qubo& model, const ExactOptions& options = {});

/// Exhaustive Gray-code enumeration; throws above max_enumeration_size.
SolutionPool solve_exhaustive(const Qubo& model, const ExactOptions& options = {});

/// Bucket elimination; throws when the induced width exceeds the limit.
SolutionPool solve_by_elimination(const Qubo& model, std::size_t max_width = 24);

/// Induced width of the min-fill elimination order (largest eliminated
/// neighbourhood).
std::size_t elimination_width(const Qubo& model);

// ---------------------------------------------------------------------------
// Simulated annealing

struct SaConfig {
  double initial_temperature = 10.0;
  double cooling_ratio = 0.998;
  int sweeps = 2000;
  int restarts = 8;
  std::uint64_t seed = 1;
  std::size_t pool_capacity = 100;
};

void validate(const SaConfig& config);

/// Metropolis single-bit-flip sweeps with T <- T·cooling_ratio per sweep.
SolutionPool solve_sa(const Qubo& model, const SaConfig& config);

// ---------------------------------------------------------------------------
// Tabu search

struct TabuConfig {
  int tenure = 10;
  int max_iterations = 2000;
  int restarts = 4;
  std::uint64_t seed = 1;
  std::size_t pool_capacity = 100;
};

void validate(const TabuConfig& config);

/// Steepest single-flip descent with a recency tabu list and aspiration.
/// The tenure is capped at size - 1 for models smaller than the tenure.
SolutionPool solve_tabu(const Qubo& model, const TabuConfig& config);

// ---------------------------------------------------------------------------
// Coherent Ising machine (mean-field simulation)

struct PumpSchedule {
  double start = 0.0;
  double end = 1.0;
  /// Pump value at 0-based roundtrip t of `roundtrips`.
  double at(int t, int roundtrips) const {
    if (roundtrips <= 1) return end;
    return start + (end - start) * static_cast<double>(t) / static_cast<double>(roundtrips - 1);
  }
};

struct CimConfig {
  int pulses_per_roundtrip = 211;
  double roundtrip_seconds = 2.11e-6;
  PumpSchedule pump;
  int roundtrips = 1000;
  double feedback_strength = 1.0;
  double noise_std = 0.05;
  double saturation = 1.0;
  std::uint64_t seed = 1;
  std::size_t pool_capacity = 100;
};

void validate(const CimConfig& config);

struct TrajectorySample {
  int roundtrip = 0;
  double time_seconds = 0.0;
  double energy = 0.0;
  double cut_value = 0.0;
  double best_energy = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  /// CSV header `roundtrip,time_s,energy,cut_value,best_energy`.
  void write_csv(std::ostream& out) const;
};

/// Amplitude dynamics of the simulated machine, one call per roundtrip:
///   c_i <- c_i + (p - 1)c_i - c_i³ + β(Σ_j J̃_ij c_j + h̃_i) + noise_i
/// clipped to ±saturation, where J̃, h̃ are the model couplings and fields
/// divided by the spectral radius of J (by max |h| when J is empty).
class CimSimulator {
 public:
  CimSimulator(const IsingModel& model, const CimConfig& config);

  void step(double pump, std::span<const double> noise);
  void set_amplitudes(std::span<const double> amplitudes);

  const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
  /// σ_i = sign(c_i), zero reads as +1.
  SpinConfig spins() const;
  std::size_t size() const noexcept { return amplitudes_.size(); }

  /// Pump at which the zero state loses linear stability:
  /// 1 - feedback_strength·λ_max(J̃).
  double threshold_pump() const;

 private:
  std::vector<std::vector<std::pair<std::size_t, double>>> couplings_;
  std::vector<double> fields_;
  std::vector<double> amplitudes_;
  std::vector<double> next_;
  double feedback_;
  double saturation_;
};

struct CimResult {
  SolutionPool pool;  // assignments x = (σ + 1)/2
  Trajectory trajectory;
  double threshold_pump = 0.0;
  /// First 1-based roundtrip whose pump reaches threshold_pump, or 0 when
  /// the schedule never does.
  int threshold_roundtrip = 0;
};

CimResult solve_cim_sim(const IsingModel& model, const CimConfig& config);

}  // namespace mbsq

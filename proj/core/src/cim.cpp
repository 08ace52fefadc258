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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "mbsq/maxcut.hpp"
#include "mbsq/solvers.hpp"

namespace mbsq {

void validate(const CimConfig& config) {
  if (config.pulses_per_roundtrip <= 0)
    throw std::invalid_argument("CIM pulses_per_roundtrip must be positive");
  if (!(config.roundtrip_seconds > 0.0))
    throw std::invalid_argument("CIM roundtrip_seconds must be positive");
  if (config.roundtrips <= 0) throw std::invalid_argument("CIM roundtrips must be positive");
  if (!(config.feedback_strength > 0.0))
    throw std::invalid_argument("CIM feedback_strength must be positive");
  if (!(config.noise_std >= 0.0)) throw std::invalid_argument("CIM noise_std must be non-negative");
  if (!(config.saturation > 0.0)) throw std::invalid_argument("CIM saturation must be positive");
}

namespace {

std::string shortest(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

}  // namespace

void Trajectory::write_csv(std::ostream& out) const {
  out << "roundtrip,time_s,energy,cut_value,best_energy\n";
  for (const auto& s : samples)
    out << s.roundtrip << ',' << shortest(s.time_seconds) << ',' << shortest(s.energy) << ','
        << shortest(s.cut_value) << ',' << shortest(s.best_energy) << '\n';
}

namespace {

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

void multiply(const Adjacency& adj, double shift, const std::vector<double>& u,
              std::vector<double>& out) {
  for (std::size_t i = 0; i < adj.size(); ++i) {
    double acc = shift * u[i];
    for (const auto& [j, w] : adj[i]) acc += w * u[j];
    out[i] = acc;
  }
}

// Largest eigenvalue of the symmetric matrix adj + shift·I by power iteration;
// the caller picks shift so the spectrum is non-negative.
double top_eigenvalue(const Adjacency& adj, double shift) {
  const std::size_t n = adj.size();
  if (n == 0) return shift;
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  std::vector<double> w(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (auto& x : u) x /= norm;
    multiply(adj, shift, u, w);
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += u[i] * w[i];
    u.swap(w);
    if (std::abs(rayleigh - lambda) <= 1e-10 * std::max(1.0, std::abs(rayleigh))) return rayleigh;
    lambda = rayleigh;
  }
  return lambda;
}

}  // namespace

CimSimulator::CimSimulator(const IsingModel& model, const CimConfig& config)
    : couplings_(model.size()),
      fields_(model.fields()),
      amplitudes_(model.size(), 0.0),
      next_(model.size(), 0.0),
      feedback_(config.feedback_strength),
      saturation_(config.saturation) {
  double max_row = 0.0;
  std::vector<double> row_sum(model.size(), 0.0);
  for (const auto& [key, j] : model.couplings()) {
    couplings_[key.first].emplace_back(key.second, j);
    couplings_[key.second].emplace_back(key.first, j);
    row_sum[key.first] += std::abs(j);
    row_sum[key.second] += std::abs(j);
  }
  for (double r : row_sum) max_row = std::max(max_row, r);
  double scale = 0.0;
  if (max_row > 0.0) {
    // ρ(J) = max(λ_max, -λ_min); the row-sum bound makes both shifted spectra non-negative.
    const double top = top_eigenvalue(couplings_, max_row) - max_row;
    Adjacency negated = couplings_;
    for (auto& row : negated)
      for (auto& [j, w] : row) w = -w;
    const double bottom = max_row - top_eigenvalue(negated, max_row);
    scale = std::max(std::abs(top), std::abs(bottom));
  }
  if (scale <= 0.0)
    for (double h : fields_) scale = std::max(scale, std::abs(h));
  if (scale > 0.0) {
    for (auto& row : couplings_)
      for (auto& [j, w] : row) w /= scale;
    for (auto& h : fields_) h /= scale;
  }
}

void CimSimulator::set_amplitudes(std::span<const double> amplitudes) {
  if (amplitudes.size() != amplitudes_.size())
    throw std::invalid_argument("set_amplitudes: size mismatch");
  amplitudes_.assign(amplitudes.begin(), amplitudes.end());
}

void CimSimulator::step(double pump, std::span<const double> noise) {
  if (noise.size() != amplitudes_.size()) throw std::invalid_argument("step: noise size mismatch");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const double c = amplitudes_[i];
    double local = fields_[i];
    for (const auto& [j, w] : couplings_[i]) local += w * amplitudes_[j];
    const double updated = c + (pump - 1.0) * c - c * c * c + feedback_ * local + noise[i];
    next_[i] = std::clamp(updated, -saturation_, saturation_);
  }
  amplitudes_.swap(next_);
}

double CimSimulator::threshold_pump() const {
  if (amplitudes_.empty()) return 1.0;
  // J̃ has spectral radius <= 1, so J̃ + I is positive semidefinite.
  return 1.0 - feedback_ * (top_eigenvalue(couplings_, 1.0) - 1.0);
}

SpinConfig CimSimulator::spins() const {
  SpinConfig s(amplitudes_.size());
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) s[i] = amplitudes_[i] < 0.0 ? -1 : 1;
  return s;
}

CimResult solve_cim_sim(const IsingModel& model, const CimConfig& config) {
  validate(config);
  if (model.size() > static_cast<std::size_t>(config.pulses_per_roundtrip))
    throw std::invalid_argument("CIM: model has " + std::to_string(model.size()) +
                                " spins but only " + std::to_string(config.pulses_per_roundtrip) +
                                " pulses per roundtrip");
  const auto start = std::chrono::steady_clock::now();
  CimSimulator sim(model, config);
  const auto graph = ising_to_maxcut(model);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PoolCollector pool(std::max<std::size_t>(config.pool_capacity, 1));

  CimResult result;
  result.threshold_pump = sim.threshold_pump();
  result.trajectory.samples.reserve(config.roundtrips);
  std::vector<double> noise(model.size(), 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  for (int t = 0; t < config.roundtrips; ++t) {
    for (auto& xi : noise) xi = config.noise_std > 0.0 ? config.noise_std * gauss(rng) : 0.0;
    const double pump = config.pump.at(t, config.roundtrips);
    if (result.threshold_roundtrip == 0 && pump >= result.threshold_pump)
      result.threshold_roundtrip = t + 1;
    sim.step(pump, noise);
    const auto spins = sim.spins();
    const double e = ising_energy(model, spins);
    ++evaluations;
    best = std::min(best, e);
    const double cut = cut_value(graph, partition_from_spins(graph, spins));
    result.trajectory.samples.push_back(
        {t + 1, (t + 1) * config.roundtrip_seconds, e, cut, best});
    if (pool.admits(e)) pool.insert(to_bits(spins), e);
  }

  result.pool = pool.release();
  result.pool.evaluations = evaluations;
  result.pool.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace mbsq

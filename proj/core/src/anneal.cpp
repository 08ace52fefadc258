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

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mbsq/solvers.hpp"

namespace mbsq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const SaConfig& config) {
  if (!(config.initial_temperature > 0.0))
    throw std::invalid_argument("SA initial_temperature must be positive");
  if (!(config.cooling_ratio > 0.0 && config.cooling_ratio < 1.0))
    throw std::invalid_argument("SA cooling_ratio must lie in (0, 1)");
  if (config.sweeps <= 0) throw std::invalid_argument("SA sweeps must be positive");
  if (config.restarts <= 0) throw std::invalid_argument("SA restarts must be positive");
}

SolutionPool solve_sa(const Qubo& model, const SaConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const QuboAdjacency adj(model);
  const std::size_t n = model.size();
  PoolCollector pool(std::max<std::size_t>(config.pool_capacity, 1));
  std::uint64_t evaluations = 0;

  std::vector<double> field(n);
  Assignment x(n);
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(restart))));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1u);
    for (std::size_t i = 0; i < n; ++i) {
      field[i] = adj.linear[i];
      for (const auto& [j, q] : adj.neighbors[i])
        if (x[j]) field[i] += q;
    }
    double e = energy(model, x);
    if (pool.admits(e)) pool.insert(x, e);

    double temperature = config.initial_temperature;
    for (int sweep = 0; sweep < config.sweeps; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = x[i] ? -field[i] : field[i];
        ++evaluations;
        if (delta > 0.0 && unit(rng) >= std::exp(-delta / temperature)) continue;
        x[i] ^= 1;
        e += delta;
        const double sign = x[i] ? 1.0 : -1.0;
        for (const auto& [j, q] : adj.neighbors[i]) field[j] += sign * q;
      }
      if (pool.admits(e - 1e-9)) pool.insert(x, energy(model, x));
      temperature *= config.cooling_ratio;
    }
  }

  auto out = pool.release();
  out.evaluations = evaluations;
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mbsq

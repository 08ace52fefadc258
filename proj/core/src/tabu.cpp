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
#include <chrono>
#include <limits>
#include <random>
#include <stdexcept>

#include "mbsq/solvers.hpp"

namespace mbsq {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const TabuConfig& config) {
  if (config.tenure <= 0) throw std::invalid_argument("tabu tenure must be positive");
  if (config.max_iterations <= 0) throw std::invalid_argument("tabu max_iterations must be positive");
  if (config.restarts <= 0) throw std::invalid_argument("tabu restarts must be positive");
}

SolutionPool solve_tabu(const Qubo& model, const TabuConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const QuboAdjacency adj(model);
  const std::size_t n = model.size();
  PoolCollector pool(std::max<std::size_t>(config.pool_capacity, 1));
  std::uint64_t evaluations = 0;
  if (n == 0) {
    pool.insert(Assignment{}, model.offset());
    auto out = pool.release();
    out.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  const long tenure = std::min<long>(config.tenure, static_cast<long>(n) - 1);

  std::vector<double> field(n);
  std::vector<long> tabu_until(n);
  Assignment x(n);
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::mt19937_64 rng(mix(config.seed ^ mix(0x7abu + static_cast<std::uint64_t>(restart))));
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1u);
    for (std::size_t i = 0; i < n; ++i) {
      field[i] = adj.linear[i];
      for (const auto& [j, q] : adj.neighbors[i])
        if (x[j]) field[i] += q;
    }
    std::fill(tabu_until.begin(), tabu_until.end(), -1);
    double e = energy(model, x);
    double best = e;
    if (pool.admits(e)) pool.insert(x, e);

    for (long iter = 0; iter < config.max_iterations; ++iter) {
      std::size_t move = n;
      double move_delta = std::numeric_limits<double>::infinity();
      std::uint64_t ties = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = x[i] ? -field[i] : field[i];
        ++evaluations;
        const bool aspirated = e + delta < best - 1e-9;
        if (tabu_until[i] >= iter && !aspirated) continue;
        if (delta < move_delta - 1e-12) {
          move = i;
          move_delta = delta;
          ties = 1;
        } else if (delta <= move_delta + 1e-12) {
          // Uniform choice among equally good moves.
          if (rng() % ++ties == 0) move = i;
        }
      }
      if (move == n) continue;  // every move tabu and none aspirated
      x[move] ^= 1;
      e += move_delta;
      const double sign = x[move] ? 1.0 : -1.0;
      for (const auto& [j, q] : adj.neighbors[move]) field[j] += sign * q;
      tabu_until[move] = iter + tenure;
      if (e < best) best = e;
      if (pool.admits(e - 1e-9)) pool.insert(x, energy(model, x));
    }
  }

  auto out = pool.release();
  out.evaluations = evaluations;
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mbsq

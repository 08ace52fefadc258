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
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "mbsq/solvers.hpp"

namespace mbsq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Factor {
  std::vector<std::size_t> scope;  // ascending variable ids
  std::vector<double> table;       // bit t of the index is scope[t]
};

// Min-fill elimination order; returns the order and its induced width.
std::pair<std::vector<std::size_t>, std::size_t> min_fill_order(const Qubo& model) {
  const std::size_t n = model.size();
  std::vector<std::set<std::size_t>> adj(n);
  for (const auto& [key, q] : model.terms()) {
    if (key.first == key.second) continue;
    adj[key.first].insert(key.second);
    adj[key.second].insert(key.first);
  }
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t width = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    std::size_t best_degree = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const auto degree = adj[v].size();
      // Count missing edges among neighbours, stopping once worse than best.
      std::size_t fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end() && fill <= best_fill; ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      if (fill < best_fill || (fill == best_fill && degree < best_degree)) {
        best = v;
        best_fill = fill;
        best_degree = degree;
      }
    }
    const std::vector<std::size_t> nbrs(adj[best].begin(), adj[best].end());
    width = std::max(width, nbrs.size());
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
      adj[nbrs[a]].erase(best);
      for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
        adj[nbrs[a]].insert(nbrs[b]);
        adj[nbrs[b]].insert(nbrs[a]);
      }
    }
    adj[best].clear();
    done[best] = true;
    order.push_back(best);
  }
  return {order, width};
}

}  // namespace

std::size_t elimination_width(const Qubo& model) { return min_fill_order(model).second; }

SolutionPool solve_exhaustive(const Qubo& model, const ExactOptions& options) {
  const std::size_t n = model.size();
  if (n > options.max_enumeration_size)
    throw std::invalid_argument("solve_exhaustive: model size " + std::to_string(n) +
                                " exceeds enumeration limit " +
                                std::to_string(options.max_enumeration_size));
  const auto start = Clock::now();
  const QuboAdjacency adj(model);
  PoolCollector pool(std::max<std::size_t>(options.pool_capacity, 1));
  Assignment x(n, 0);
  double running = model.offset();
  pool.insert(x, energy(model, x));
  const std::uint64_t total = std::uint64_t{1} << n;
  // Gray code: step s flips bit ctz(s).
  for (std::uint64_t s = 1; s < total; ++s) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(s));
    running += adj.flip_delta(x, bit);
    x[bit] ^= 1;
    if (pool.admits(running - 1e-9)) pool.insert(x, energy(model, x));
  }
  auto out = pool.release();
  out.evaluations = total;
  out.wall_time_seconds = seconds_since(start);
  return out;
}

SolutionPool solve_by_elimination(const Qubo& model, std::size_t max_width) {
  const auto start = Clock::now();
  const std::size_t n = model.size();
  auto [order, width] = min_fill_order(model);
  if (width > max_width)
    throw std::invalid_argument("solve_by_elimination: induced width " + std::to_string(width) +
                                " exceeds limit " + std::to_string(max_width));

  std::vector<std::size_t> position(n);
  for (std::size_t step = 0; step < n; ++step) position[order[step]] = step;

  std::vector<std::vector<Factor>> bucket(n);
  auto place = [&](Factor f, double& constant) {
    if (f.scope.empty()) {
      constant += f.table[0];
      return;
    }
    const auto first = *std::min_element(f.scope.begin(), f.scope.end(), [&](auto a, auto b) {
      return position[a] < position[b];
    });
    bucket[first].push_back(std::move(f));
  };

  double constant = model.offset();
  for (const auto& [key, q] : model.terms()) {
    if (key.first == key.second)
      place(Factor{{key.first}, {0.0, q}}, constant);
    else
      place(Factor{{key.first, key.second}, {0.0, 0.0, 0.0, q}}, constant);
  }

  // argmin[v][u]: best value of v given the assignment u of scope[v].
  std::vector<std::vector<std::size_t>> kept_scope(n);
  std::vector<std::vector<bool>> argmin(n);
  std::uint64_t evaluations = 0;

  for (const auto v : order) {
    auto& factors = bucket[v];
    std::vector<std::size_t> scope;
    for (const auto& f : factors)
      for (auto u : f.scope)
        if (u != v) scope.push_back(u);
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    const std::size_t k = scope.size();

    // Bit position of each factor variable within (scope..., v).
    std::vector<std::vector<std::size_t>> bit_of(factors.size());
    for (std::size_t f = 0; f < factors.size(); ++f)
      for (auto u : factors[f].scope)
        bit_of[f].push_back(u == v ? k
                                   : static_cast<std::size_t>(
                                         std::lower_bound(scope.begin(), scope.end(), u) -
                                         scope.begin()));

    const std::uint64_t entries = std::uint64_t{1} << k;
    Factor message{scope, std::vector<double>(entries)};
    std::vector<bool> choice(entries, false);
    for (std::uint64_t u = 0; u < entries; ++u) {
      double value[2] = {0.0, 0.0};
      for (int vb = 0; vb < 2; ++vb) {
        const std::uint64_t full = u | (static_cast<std::uint64_t>(vb) << k);
        for (std::size_t f = 0; f < factors.size(); ++f) {
          std::uint64_t idx = 0;
          for (std::size_t t = 0; t < bit_of[f].size(); ++t)
            idx |= ((full >> bit_of[f][t]) & 1u) << t;
          value[vb] += factors[f].table[idx];
        }
      }
      evaluations += 2;
      choice[u] = value[1] < value[0];
      message.table[u] = std::min(value[0], value[1]);
    }
    factors.clear();
    factors.shrink_to_fit();
    kept_scope[v] = scope;
    argmin[v] = std::move(choice);
    place(std::move(message), constant);
  }

  Assignment x(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = *it;
    std::uint64_t u = 0;
    for (std::size_t t = 0; t < kept_scope[v].size(); ++t)
      u |= static_cast<std::uint64_t>(x[kept_scope[v][t]]) << t;
    x[v] = argmin[v][u] ? 1 : 0;
  }

  const double recomputed = energy(model, x);
  if (std::abs(recomputed - constant) > 1e-6 * std::max(1.0, std::abs(constant)))
    throw std::logic_error("solve_by_elimination: back-substitution disagrees with minimum");
  SolutionPool out;
  out.entries.push_back({x, recomputed});
  out.evaluations = evaluations;
  out.wall_time_seconds = seconds_since(start);
  return out;
}

SolutionPool solve_exact(const Qubo& model, const ExactOptions& options) {
  if (model.size() <= options.max_enumeration_size) return solve_exhaustive(model, options);
  return solve_by_elimination(model, options.max_elimination_width);
}

}  // namespace mbsq

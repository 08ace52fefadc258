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
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace mbsq {

/// Binary vector x ∈ {0,1}^size.
using Assignment = std::vector<std::uint8_t>;
/// Spin vector σ ∈ {-1,+1}^size.
using SpinConfig = std::vector<std::int8_t>;

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Upper-triangular QUBO: f(x) = Σ_{i<=j} Q_ij x_i x_j + offset.
/// Linear terms live on the diagonal. Zero coefficients are never stored.
class Qubo {
 public:
  Qubo() = default;
  explicit Qubo(std::size_t size, double offset = 0.0) : size_(size), offset_(offset) {}

  std::size_t size() const noexcept { return size_; }
  double offset() const noexcept { return offset_; }
  const std::map<IndexPair, double>& terms() const noexcept { return terms_; }

  /// Accumulates `coeff` onto (min(i,j), max(i,j)); grows size if needed.
  void add(std::size_t i, std::size_t j, double coeff);
  void add_offset(double value) { offset_ += value; }
  void resize(std::size_t size);

  double coefficient(std::size_t i, std::size_t j) const;

  friend bool operator==(const Qubo&, const Qubo&) = default;

 private:
  std::size_t size_ = 0;
  std::map<IndexPair, double> terms_;
  double offset_ = 0.0;
};

/// H(σ) = -Σ_{i<j} J_ij σ_i σ_j - Σ_i h_i σ_i + offset.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(std::size_t size, double offset = 0.0)
      : fields_(size, 0.0), offset_(offset) {}

  std::size_t size() const noexcept { return fields_.size(); }
  double offset() const noexcept { return offset_; }
  const std::map<IndexPair, double>& couplings() const noexcept { return couplings_; }
  const std::vector<double>& fields() const noexcept { return fields_; }

  /// Accumulates onto J_{min(i,j),max(i,j)}; i == j is rejected.
  void add_coupling(std::size_t i, std::size_t j, double value);
  void add_field(std::size_t i, double value);
  void add_offset(double value) { offset_ += value; }

  bool has_fields() const;

 private:
  std::map<IndexPair, double> couplings_;
  std::vector<double> fields_;
  double offset_ = 0.0;
};

double energy(const Qubo& model, std::span<const std::uint8_t> x);
double ising_energy(const IsingModel& model, std::span<const std::int8_t> spins);

/// Substitutes x = (σ+1)/2; energies agree on corresponding configurations.
IsingModel qubo_to_ising(const Qubo& model);

SpinConfig to_spins(std::span<const std::uint8_t> x);
Assignment to_bits(std::span<const std::int8_t> spins);

/// Text format:
///   # comment
///   p qubo <size> <num_terms>
///   i j coeff          (i <= j, num_terms lines)
///   c offset <value>
void write_qubo(const Qubo& model, std::ostream& out);
Qubo read_qubo(std::istream& in);

/// Dense row-wise adjacency for local-search solvers. `linear[i]` is Q_ii;
/// `neighbors[i]` lists (j, Q_ij) for every off-diagonal term touching i.
struct QuboAdjacency {
  std::vector<double> linear;
  std::vector<std::vector<std::pair<std::size_t, double>>> neighbors;
  double offset = 0.0;

  explicit QuboAdjacency(const Qubo& model);
  std::size_t size() const noexcept { return linear.size(); }
  /// Energy change from flipping bit i given x.
  double flip_delta(std::span<const std::uint8_t> x, std::size_t i) const;
};

}  // namespace mbsq

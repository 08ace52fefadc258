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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mbsq/qubo.hpp"
#include "mbsq/registry.hpp"

namespace mbsq {

/// Integer-coefficient affine expression Σ coeff·x_index + constant.
struct LinearExpr {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  std::int64_t constant = 0;

  LinearExpr() = default;
  explicit LinearExpr(std::int64_t c) : constant(c) {}

  LinearExpr& add(std::size_t index, std::int64_t coeff) {
    terms.emplace_back(index, coeff);
    return *this;
  }
  LinearExpr& add(const LinearExpr& other, std::int64_t factor = 1);
  LinearExpr& add_constant(std::int64_t c) {
    constant += c;
    return *this;
  }

  /// Merges repeated indices and drops zero coefficients.
  LinearExpr normalized() const;

  std::int64_t evaluate(std::span<const std::uint8_t> x) const;
  std::int64_t min_value() const;
  std::int64_t max_value() const;
};

/// Integer encoded as Σ_t 2^t·bit_t.
struct BinaryInteger {
  std::vector<std::size_t> bits;

  LinearExpr expr(std::int64_t factor = 1) const;
  std::int64_t decode(std::span<const std::uint8_t> x) const;
  std::int64_t max_value() const { return (std::int64_t{1} << bits.size()) - 1; }
};

/// Number of bits needed to represent every integer in [0, max_value].
int bits_for(std::int64_t max_value);

/// One penalized constraint: lambda·(expr)² with expr == 0 when satisfied.
/// For inequalities `expr` already includes the negated slack bits.
struct PenaltyTerm {
  std::string label;
  LinearExpr expr;
  double lambda = 0.0;
  std::vector<std::size_t> slack_bits;
};

/// A finished model: the QUBO, its variable names, and the penalized
/// constraints it was assembled from.
struct BuiltModel {
  Qubo qubo;
  VarRegistry registry;
  std::vector<PenaltyTerm> penalties;

  /// Σ lambda·expr² over all penalized constraints at x.
  double penalty(std::span<const std::uint8_t> x) const;
};

/// Accumulates variables, objective terms and squared penalties into a QUBO.
class QuboBuilder {
 public:
  std::size_t add_variable(VarName name);
  BinaryInteger add_integer(VarFamily family, std::vector<int> index, int width);

  void add_linear(std::size_t index, double coeff);
  void add_quadratic(std::size_t i, std::size_t j, double coeff);
  void add_offset(double value) { qubo_.add_offset(value); }

  /// Adds lambda·(expr)², expanded with x² = x.
  void add_squared_penalty(const LinearExpr& expr, double lambda);

  /// Penalizes expr != 0.
  void add_equality(std::string label, const LinearExpr& expr, double lambda);
  /// Penalizes expr < 0 via expr - slack == 0 with slack sized to
  /// [0, max(expr)]. Constraints that hold for every assignment are dropped.
  void add_nonnegative(std::string label, const LinearExpr& expr, double lambda);

  const VarRegistry& registry() const noexcept { return registry_; }
  const Qubo& qubo() const noexcept { return qubo_; }
  const std::vector<PenaltyTerm>& penalties() const noexcept { return penalties_; }

  /// Moves the finished model out; the builder is left empty.
  BuiltModel finish();

 private:
  void check_index(std::size_t index) const;

  VarRegistry registry_;
  Qubo qubo_;
  std::vector<PenaltyTerm> penalties_;
};

}  // namespace mbsq

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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mbsq {

/// Variable families of the beam-selection models.
enum class VarFamily {
  kX,      // x(j,k): beam k of cell j selected
  kZ,      // z(i): grid i satisfied
  kD,      // d(i,j,k): beam k attains c_ij
  kP,      // p(i,j): cell j attains a_i
  kQ,      // q(i,j): cell j among the two attaining b_i
  kABit,   // abit(i,t)
  kBBit,   // bbit(i,t)
  kCBit,   // cbit(i,j,t)
  kSlack,  // slack(constraint, t)
};

std::string_view family_tag(VarFamily family);

struct VarName {
  VarFamily family = VarFamily::kX;
  std::vector<int> index;

  std::string to_string() const;
  /// Inverse of to_string; nullopt on malformed text.
  static std::optional<VarName> parse(std::string_view text);

  friend auto operator<=>(const VarName&, const VarName&) = default;
  friend bool operator==(const VarName&, const VarName&) = default;
};

/// Bijection between structured variable names and 0..size-1.
class VarRegistry {
 public:
  /// Appends `name` and returns its index. Throws on duplicates.
  std::size_t add(VarName name);

  std::size_t size() const noexcept { return names_.size(); }
  const VarName& name(std::size_t index) const { return names_.at(index); }
  const std::vector<VarName>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(const VarName& name) const;
  /// Throws std::out_of_range when absent.
  std::size_t at(const VarName& name) const;

  std::size_t count(VarFamily family) const;

  friend bool operator==(const VarRegistry& a, const VarRegistry& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<VarName> names_;
  std::map<VarName, std::size_t> lookup_;
};

}  // namespace mbsq

// Copyright 2026 The ridepool Authors
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
#include <optional>
#include <utility>
#include <vector>

namespace ridepool {

/// Dense rows x cols matrix of optional weights. Absent cells can never be
/// selected.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), weights_(rows * cols, 0.0), present_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, double w) {
    weights_[r * cols_ + c] = w;
    present_[r * cols_ + c] = 1;
  }
  void clear(std::size_t r, std::size_t c) { present_[r * cols_ + c] = 0; }
  bool present(std::size_t r, std::size_t c) const { return present_[r * cols_ + c] != 0; }
  double weight(std::size_t r, std::size_t c) const { return weights_[r * cols_ + c]; }
  std::optional<double> at(std::size_t r, std::size_t c) const {
    if (!present(r, c)) return std::nullopt;
    return weight(r, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> weights_;
  std::vector<char> present_;
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), ascending row
  double total = 0.0;
};

// Weights are resolved to this many seconds when compared.
inline constexpr double kWeightResolution = 1e-6;

enum class AssignmentObjective {
  MaxWeight,               // largest total weight; size is free
  MaxCardinalityThenWeight // most assignments, then largest total weight
};

/// Assignment over present cells, each row and column used at most once.
///
/// Optimizes `objective`; among equal optima the row-to-column mate sequence
/// is lexicographically smallest, an unassigned row ranking after every
/// column. Solved with the Hungarian method on a square problem padded with
/// one "unassigned" slot per row and per column, followed by an
/// alternating-cycle walk over the optimal tight subgraph for the tie rule.
/// Throws ValidationError for non-finite or out-of-range weights.
Matching solve_assignment(const WeightMatrix& weights,
                          AssignmentObjective objective = AssignmentObjective::MaxWeight);

}  // namespace ridepool

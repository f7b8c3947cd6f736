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

#include "ridepool/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "ridepool/error.hpp"

namespace ridepool {

namespace {

using Cost = std::int64_t;
constexpr Cost kInf = std::numeric_limits<Cost>::max();
constexpr double kMaxAbsWeight = 1e9;

// Square min-cost problem of size rows + cols:
//   real row i    x real col j    -> -(w_ij + bonus) if present
//   real row i    x dummy col i   -> 0 (row unassigned)
//   dummy row j   x real col j    -> 0 (col unassigned)
//   dummy row     x dummy col     -> 0
// Everything else is not an edge. A non-zero `bonus` exceeds any achievable
// weight difference so that cardinality dominates.
class Augmented {
 public:
  Augmented(const WeightMatrix& w, std::vector<Cost> quantized, Cost bonus)
      : w_(w), q_(std::move(quantized)), bonus_(bonus), m_(w.rows()), n_(w.cols()), size_(m_ + n_) {}

  std::size_t size() const { return size_; }

  bool edge(std::size_t i, std::size_t j) const {
    if (i < m_ && j < n_) return w_.present(i, j);
    if (i < m_) return j - n_ == i;
    if (j < n_) return i - m_ == j;
    return true;
  }
  Cost cost(std::size_t i, std::size_t j) const {
    if (i < m_ && j < n_) return -(q_[i * n_ + j] + bonus_);
    return 0;
  }

 private:
  const WeightMatrix& w_;
  std::vector<Cost> q_;
  Cost bonus_;
  std::size_t m_, n_, size_;
};

struct Solution {
  std::vector<std::size_t> row_mate;
  std::vector<std::size_t> col_mate;
  std::vector<Cost> u, v;  // optimal duals: cost - u[i] - v[j] >= 0, = 0 on the matching
};

// Shortest-augmenting-path Hungarian method, O(N^3), over the sparse edge
// set. Rows are added one at a time; a free column is always reachable
// because every row owns a dummy column.
Solution hungarian(const Augmented& a) {
  const std::size_t n = a.size();
  std::vector<Cost> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Cost> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      Cost delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (a.edge(i0 - 1, j - 1)) {
          const Cost cur = a.cost(i0 - 1, j - 1) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (delta == kInf) throw std::logic_error("assignment: no augmenting path");
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (minv[j] != kInf) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Solution s;
  s.row_mate.assign(n, 0);
  s.col_mate.assign(n, 0);
  s.u.assign(u.begin() + 1, u.end());
  s.v.assign(v.begin() + 1, v.end());
  for (std::size_t j = 1; j <= n; ++j) {
    s.col_mate[j - 1] = p[j] - 1;
    s.row_mate[p[j] - 1] = j - 1;
  }
  return s;
}

// Re-routes the optimal matching so that row `row` takes column `col`,
// keeping every frozen vertex fixed and staying inside the tight subgraph.
// Returns false when no optimal matching with that edge exists.
bool rotate_onto(const Augmented& a, Solution& s, const std::vector<std::vector<std::size_t>>& tight,
                 const std::vector<char>& frozen_row, const std::vector<char>& frozen_col,
                 std::size_t row, std::size_t col) {
  if (s.row_mate[row] == col) return true;
  const std::size_t n = a.size();
  const std::size_t start = s.col_mate[col];
  const std::size_t target = s.row_mate[row];
  std::vector<std::size_t> reached_from(n, n);  // column -> row that reached it
  std::vector<std::size_t> queue{start};
  std::vector<char> seen_row(n, 0);
  seen_row[start] = 1;
  seen_row[row] = 1;
  bool found = false;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    const std::size_t r = queue[head];
    for (std::size_t c : tight[r]) {
      if (c == col || frozen_col[c] || c == s.row_mate[r] || reached_from[c] != n) continue;
      reached_from[c] = r;
      if (c == target) {
        found = true;
        break;
      }
      const std::size_t next = s.col_mate[c];
      if (seen_row[next] || frozen_row[next]) continue;
      seen_row[next] = 1;
      queue.push_back(next);
    }
  }
  if (!found) return false;
  // Shift columns along the cycle: each row on the path takes the column it
  // reached, the start row gives up `col` to `row`.
  std::size_t c = target;
  while (true) {
    const std::size_t r = reached_from[c];
    const std::size_t old = s.row_mate[r];
    s.row_mate[r] = c;
    s.col_mate[c] = r;
    if (r == start) break;
    c = old;
  }
  s.row_mate[row] = col;
  s.col_mate[col] = row;
  return true;
}

}  // namespace

Matching solve_assignment(const WeightMatrix& weights, AssignmentObjective objective) {
  const std::size_t m = weights.rows();
  const std::size_t n = weights.cols();
  Matching out;
  if (m == 0 || n == 0) return out;

  std::vector<Cost> q(m * n, 0);
  Cost max_abs = 0;
  bool any = false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!weights.present(i, j)) continue;
      const double w = weights.weight(i, j);
      if (!std::isfinite(w) || std::abs(w) > kMaxAbsWeight)
        throw ValidationError("assignment weight out of range");
      q[i * n + j] = std::llround(w / kWeightResolution);
      max_abs = std::max(max_abs, std::abs(q[i * n + j]));
      any = true;
    }
  }
  if (!any) return out;
  const Cost bonus = objective == AssignmentObjective::MaxCardinalityThenWeight
                         ? 2 * static_cast<Cost>(std::min(m, n)) * max_abs + 1
                         : 0;
  const double worst = static_cast<double>(m + n + 1) * (static_cast<double>(bonus) + max_abs);
  if (worst > 4e18) throw ValidationError("assignment problem too large for exact weights");

  Augmented a(weights, std::move(q), bonus);
  Solution s = hungarian(a);

  const std::size_t size = a.size();
  std::vector<std::vector<std::size_t>> tight(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (a.edge(i, j) && a.cost(i, j) - s.u[i] - s.v[j] == 0) tight[i].push_back(j);

  std::vector<char> frozen_row(size, 0), frozen_col(size, 0);
  for (std::size_t i = 0; i < m; ++i) {
    bool placed = false;
    for (std::size_t j : tight[i]) {
      if (j >= n) break;  // real columns come first, ascending
      if (frozen_col[j]) continue;
      if (rotate_onto(a, s, tight, frozen_row, frozen_col, i, j)) {
        frozen_row[i] = frozen_col[j] = 1;
        out.pairs.emplace_back(i, j);
        out.total += weights.weight(i, j);
        placed = true;
        break;
      }
    }
    if (!placed) {
      if (s.row_mate[i] != n + i) throw std::logic_error("assignment: inconsistent tie walk");
      frozen_row[i] = frozen_col[n + i] = 1;
    }
  }
  return out;
}

}  // namespace ridepool

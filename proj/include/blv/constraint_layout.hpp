// Copyright 2025 The blv authors
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

#ifndef BLV_CONSTRAINT_LAYOUT_HPP
#define BLV_CONSTRAINT_LAYOUT_HPP

#include <string>

namespace blv {

// Single source of truth for follower-constraint indexing, shared by the
// constraint evaluator and the KKT certification so the two can never
// drift by one.
//
// Follower variables: y_1 .. y_n (chain), y_{n+1}, y_{n+2} (tail); the
// decision vector has n+2 entries, stored 0-based (y_k = entry k-1).
//
// Equality:       y_1 + y_n = 1/2                    multiplier pi
// Inequalities (2n+3 rows, in this order):
//   quad(i)       y_i^2 <= y_{i+1},  i = 1..n-1      multiplier alpha_i
//   nonneg(i)     y_i >= 0,          i = 1..n+1      multiplier beta_i
//   tail1_ub      y_{n+1} <= x_1                     multiplier gamma
//   tail2_lb      y_{n+2} >= -x_2                    multiplier delta_minus
//   tail2_ub      y_{n+2} <= x_2                     multiplier delta_plus
//
// The bound-violation vector of a ConstraintReport covers the rows from
// nonneg(1) onward (n+4 entries) in the same order.

enum class FollowerConstraintKind {
  Quad,
  NonNeg,
  Tail1Ub,
  Tail2Lb,
  Tail2Ub,
};

struct FollowerConstraintId {
  FollowerConstraintKind kind;
  int index;  // 1-based chain index for Quad/NonNeg; 0 otherwise
};

inline int num_inequalities(int n) { return 2 * n + 3; }

inline FollowerConstraintId inequality_id(int n, int row) {
  if (row < n - 1) return {FollowerConstraintKind::Quad, row + 1};
  row -= n - 1;
  if (row < n + 1) return {FollowerConstraintKind::NonNeg, row + 1};
  row -= n + 1;
  if (row == 0) return {FollowerConstraintKind::Tail1Ub, 0};
  if (row == 1) return {FollowerConstraintKind::Tail2Lb, 0};
  return {FollowerConstraintKind::Tail2Ub, 0};
}

inline std::string constraint_name(const FollowerConstraintId& id) {
  switch (id.kind) {
    case FollowerConstraintKind::Quad:
      return "quad[" + std::to_string(id.index) + "]";
    case FollowerConstraintKind::NonNeg:
      return "nonneg[" + std::to_string(id.index) + "]";
    case FollowerConstraintKind::Tail1Ub:
      return "tail1_ub";
    case FollowerConstraintKind::Tail2Lb:
      return "tail2_lb";
    case FollowerConstraintKind::Tail2Ub:
      return "tail2_ub";
  }
  return "?";
}

}  // namespace blv

#endif  // BLV_CONSTRAINT_LAYOUT_HPP

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

#ifndef BLV_EXACT_LINALG_HPP
#define BLV_EXACT_LINALG_HPP

#include <optional>
#include <vector>

#include "blv/eigen_types.hpp"

namespace blv {

/// Exact determinant via fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix.
Rational det_exact(const QMat& a);

/// Exact solve of a nonsingular square system; nullopt when singular.
std::optional<QVec> solve_square(const QMat& a, const QVec& b);

/// Cramer's-rule solve: x_i = det(A with column i replaced by b) / det(A).
/// Mirrors the determinant-ratio representation used for sensitivity
/// constants; nullopt when singular.
std::optional<QVec> cramer_solve(const QMat& a, const QVec& b);

/// Exact rank via fraction-free elimination with full pivoting.
int rank_exact(const QMat& a);

/// Row indices of a maximal set of linearly independent rows.
std::vector<int> independent_rows(const QMat& a);

/// Certified upper bound on |x_i| over all solves M_B^T x = v with B a
/// nonsingular n-subset of rows of M: clears denominators, bounds the
/// Cramer numerator by a Hadamard column-norm product and the denominator
/// from below by 1 (nonzero integer determinant). Returns a bound on the
/// 1-norm of any such solution.
Rational hadamard_solve_bound(const QMat& m, const QVec& v);

}  // namespace blv

#endif  // BLV_EXACT_LINALG_HPP

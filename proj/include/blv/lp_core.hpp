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

#ifndef BLV_LP_CORE_HPP
#define BLV_LP_CORE_HPP

#include <vector>

#include "blv/exact_linalg.hpp"

namespace blv {

enum class Sense { Min, Max };
enum class Relation { Ge, Eq, Le };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// A rational LP in user form. The canonical working form is
/// min v^T x s.t. M x >= f: Le rows flip sign, Eq rows expand into a
/// >=/<= pair, Max negates the objective.
struct LinearProgram {
  Sense sense = Sense::Min;
  QVec objective;
  QMat constraint_matrix;
  QVec rhs;
  std::vector<Relation> relations;  // empty means all Ge

  static LinearProgram minimize(QVec v, QMat m, QVec f);

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(constraint_matrix.rows()); }
  void validate() const;
  bool is_canonical() const;
  LinearProgram canonical() const;
};

/// Exact solve outcome, expressed for the canonical form. On Optimal the
/// dual certificate satisfies M^T z = v, z >= 0 and v^T x = f^T z
/// bit-exactly. Infeasible carries a Farkas vector y >= 0 with
/// y^T M = 0 and y^T f > 0; Unbounded carries a feasible ray d with
/// M d >= 0 and v^T d < 0.
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  QVec x;
  Rational value;
  std::vector<int> basis;  // canonical rows active at the reported vertex
  QVec dual;
  QVec farkas;
  QVec ray;
  long iterations = 0;
};

/// Size caps: structure-first engine, desk scale by design.
struct LpLimits {
  int max_rows = 200;
  int max_vars = 200;
  long enumeration_cap = 20000;  // bases visited before truncation
};

/// Exact primal simplex (Bland's rule, fraction-free basis solves behind
/// a dense rational tableau). Statuses are outcomes, not errors.
LpSolution solve_lp(const LinearProgram& lp, const LpLimits& limits = LpLimits());

/// All basic feasible points of the dual polyhedron {z >= 0 : M^T z = v}
/// of the canonical form, each from an exact basis solve. `truncated` is
/// set when the cap stopped the enumeration.
struct DualExtremePoints {
  std::vector<QVec> points;
  std::vector<std::vector<int>> bases;  // row index sets, aligned with points
  bool truncated = false;
};

DualExtremePoints enumerate_dual_extreme_points(const LinearProgram& lp,
                                                long cap = 20000);

/// kappa(M, v) = max ||z||_1 over dual extreme points. Exact via
/// enumeration when the basis count fits the cap, else via an exact LP
/// maximization of e^T z (valid when bounded); the Hadamard determinant
/// bound is the flagged fallback.
struct KappaBound {
  Rational kappa;
  std::vector<int> witnessing_basis;  // empty for the Hadamard fallback
  bool is_upper_bound_only = false;   // true only for the Hadamard fallback
};

KappaBound kappa_of(const LinearProgram& lp, long cap = 20000);

/// max over nonsingular row bases B of ||(M_B^T)^{-1} v||_inf, the
/// basis-solve magnitude bound used by the stability constants; falls
/// back to the Hadamard bound (flagged) past the cap.
KappaBound max_basis_solve_inf_norm(const QMat& m, const QVec& v, long cap = 20000);

/// Verifies v^T x_hat >= v* - eps * kappa(M, v) with exact arithmetic.
/// Requires M x_hat >= f - eps (throws HypothesisError otherwise).
struct NearOptimalityCheck {
  bool holds = false;
  Rational slack;  // v^T x_hat - (v* - eps * kappa)
  Rational optimal_value;
  KappaBound kappa;
};

NearOptimalityCheck nearly_optimal_bound_check(const LinearProgram& lp,
                                               const QVec& x_hat, const Rational& eps,
                                               long cap = 20000);

/// Number of k-subsets of an m-set, saturated at cap + 1.
long count_bases(int m, int k, long cap);

/// Advances idx to the next k-subset of {0, ..., m-1} in lexicographic
/// order; false once exhausted.
bool next_subset(std::vector<int>& idx, int m);

}  // namespace blv

#endif  // BLV_LP_CORE_HPP

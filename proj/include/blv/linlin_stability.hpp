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

#ifndef BLV_LINLIN_STABILITY_HPP
#define BLV_LINLIN_STABILITY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blv/lp_core.hpp"

namespace blv {

/// Linear bilevel data: min c_x^T x + c_y^T y over Ax >= a with y optimal
/// for min_ybar d^T ybar s.t. Cx + D ybar >= b.
struct LinearBilevelInstance {
  QMat A;  // m x n_x
  QVec a;
  QMat C;  // l x n_x
  QMat D;  // l x n_y
  QVec b;
  QVec c_x;
  QVec c_y;
  QVec d;

  int nx() const { return static_cast<int>(A.cols()); }
  int ny() const { return static_cast<int>(D.cols()); }
  int m() const { return static_cast<int>(A.rows()); }
  int l() const { return static_cast<int>(D.rows()); }

  void check_dims() const;

  /// Standing-assumption probes: joint set nonempty and bounded (LP
  /// probes along +-coordinate objectives), {x : Ax >= a} bounded, lower
  /// level feasible at every probed x. Returns the violated assumptions
  /// by name; empty means all probes passed.
  std::vector<std::string> violated_assumptions() const;
};

/// Near-feasible primal-dual triple, Theorem-1 style: hypotheses
/// (i)-(iii) plus a declared dual basis for hypothesis (iv).
struct NearFeasibleTriple {
  QVec x_hat;
  QVec y_hat;
  QVec z_hat;
  Rational eps;
  std::vector<int> dual_basis;  // rows of D forming the declared basis B
};

struct RecoveryResult {
  QVec point;          // recovered exactly feasible point
  Rational distance;   // 1-norm distance moved
  KappaBound kappa;    // Lemma-1 constant of the recovery LP
  bool bound_holds;    // distance <= eps * kappa (exact check)
};

/// Lemma-3 projection: nearest (1-norm) point of {x : Ax >= a}.
/// Requires A x_hat >= a - eps e.
RecoveryResult recover_upper(const LinearBilevelInstance& inst, const QVec& x_hat,
                             const Rational& eps, long cap = 20000);

struct JointRecovery {
  QVec x_star;
  QVec y_prime;
  Rational distance;
  KappaBound kappa6;
  bool bound_holds;
};

/// Lemma-3 projection onto the stacked system [A 0; C D](x;y) >= (a;b).
JointRecovery recover_joint(const LinearBilevelInstance& inst, const QVec& x_hat,
                            const QVec& y_hat, const Rational& eps, long cap = 20000);

struct LowerRecovery {
  QVec y_star;
  Rational lower_value;  // v* of the x-parameterized lower level
  Rational distance;
  Rational kappa;        // (kappa1' + 1) * kappa2', Lemma-2 constant
  KappaBound kappa1_dual;
  KappaBound kappa2_proj;
  bool bound_holds;
};

/// Lemma-2/Lemma-4 projection: nearest exactly optimal lower-level point
/// at an exactly feasible x. (y_hat, z_hat) must be nearly primal-dual
/// feasible and optimal at tolerance eps_effective; the failing
/// hypothesis is named on error.
LowerRecovery recover_lower(const LinearBilevelInstance& inst, const QVec& x,
                            const QVec& y_hat, const QVec& z_hat,
                            const Rational& eps_effective, long cap = 20000);

struct StabilityReport {
  QVec x_star;
  QVec y_star;
  Rational dist_x;
  Rational dist_y;
  Rational dist_total;
  Rational obj_diff;
  Rational eps;
  // Named constants; second member of the pair marks Hadamard-type upper
  // bounds (enumeration truncated).
  std::map<std::string, std::pair<Rational, bool>> kappa_estimates;
  Rational dist_bound;  // eps * kappa2 + eps^2 * kappa3
  Rational obj_bound;   // eps * kappa4 + eps^2 * kappa5
};

/// Full Theorem-1 pipeline: hypothesis checks, joint recovery, lower
/// recovery at the inflated tolerance eps (kappa8 + eps kappa9), exact
/// final feasibility/optimality verification, and the distance/objective
/// bounds with all constants computed per instance.
StabilityReport theorem1_check(const LinearBilevelInstance& inst,
                               const NearFeasibleTriple& triple, long cap = 20000);

/// Exact optimistic bilevel solve by enumerating vertices of the joint
/// polyhedron and filtering by lower-level optimality. Desk scale:
/// n_x, n_y <= 6 and m, l <= 12.
struct ExactBilevelPoint {
  QVec x;
  QVec y;
  QVec z;  // lower-level dual at x
  Rational value;
  std::vector<int> dual_basis;
};

ExactBilevelPoint solve_linear_bilevel_exact(const LinearBilevelInstance& inst,
                                             long cap = 200000);

/// Deterministic test-data generator: perturbs the exact solution by
/// componentwise rational noise of magnitude <= eps (scaled so hypotheses
/// (i)-(iv) provably survive), then re-checks them exactly.
NearFeasibleTriple generate_perturbed_triple(const LinearBilevelInstance& inst,
                                             const Rational& eps, std::uint64_t seed);

/// Exact hypothesis check; returns the name of the first failing
/// condition, or an empty string when all hold.
std::string check_triple_hypotheses(const LinearBilevelInstance& inst,
                                    const NearFeasibleTriple& triple, long cap = 20000);

}  // namespace blv

#endif  // BLV_LINLIN_STABILITY_HPP

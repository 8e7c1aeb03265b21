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

#ifndef BLV_EPS_ANALYSIS_HPP
#define BLV_EPS_ANALYSIS_HPP

#include <cstdint>

#include "blv/exact_lower.hpp"
#include "blv/instance.hpp"

namespace blv {

enum class EpsMode { Optimistic, Pessimistic };

struct EpsScenario {
  InstanceParams params;
  Rational eps;
  EpsMode mode;
};

/// Exact-vs-eps-feasible outcome comparison. All fields are exact
/// rationals; nothing here depends on a rounding step.
struct GapReport {
  ExactBilevelSolution exact;
  LeaderPoint eps_leader;
  FollowerPoint eps_follower;
  Rational eps_objective;          // F at the eps solution
  Rational leader_distance_1norm;  // ||x_eps - x_exact||_1
  Rational objective_gap;          // |F_eps - F_exact|
  Rational eps_threshold;          // 2^(-2^(n-1))
  Rational eps;
  EpsMode mode;
};

/// The relaxed chain point y_i = 2^(-2^(i-1)) for i < n, y_n = 0, with the
/// given tail. Exact rationals; violates exactly one quadratic row, by
/// 2^(-2^(n-1)).
FollowerPoint eps_point(const InstanceParams& p, const LeaderPoint& x,
                        const Rational& tail1, const Rational& tail2);

/// The admissibility threshold 2^(-2^(n-1)) for the eps-point family.
Rational eps_threshold(const InstanceParams& p);

/// Optimistic/pessimistic leader solution when the follower may answer
/// with any eps-feasible point. Errors (RegimeError, carrying the
/// threshold) when eps is below 2^(-2^(n-1)).
GapReport solve_bilevel_eps(const EpsScenario& s);

/// Smallest n >= 2 with 2^(-2^(n-1)) <= eps, by exact comparison.
int min_n_for_eps(const Rational& eps);

/// Certifies 1/2 as the maximum follower objective over eps-feasible
/// decisions: checks the objective rewrite through the equality row and
/// the sign argument on `samples` random eps-feasible points (plus the
/// relaxed chain point itself), all in exact arithmetic. Returns 1/2.
Rational superoptimality_certificate(const InstanceParams& p, const Rational& eps,
                                     int samples = 10000, std::uint64_t seed = 20250810);

}  // namespace blv

#endif  // BLV_EPS_ANALYSIS_HPP

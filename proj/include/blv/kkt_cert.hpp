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

#ifndef BLV_KKT_CERT_HPP
#define BLV_KKT_CERT_HPP

#include <vector>

#include "blv/exact_lower.hpp"

namespace blv {

/// Lagrangian multipliers of the follower problem at its exact optimum.
/// Zero entries are exact (point enclosures); the alpha chain, gamma and
/// delta_plus inherit the solution's enclosure widths.
struct Multipliers {
  std::vector<Enclosure> alpha;  // quad rows, length n-1
  std::vector<Enclosure> beta;   // nonneg rows, length n+1 (all exactly 0)
  Enclosure gamma;               // tail1_ub
  Enclosure delta_minus;         // tail2_lb (exactly 0)
  Enclosure delta_plus;          // tail2_ub
  Enclosure pi;                  // equality row
};

enum class ComplementarityStatus { ActiveExact, ActiveStructural, Inactive };

struct ComplementarityRow {
  FollowerConstraintId id;
  Enclosure slack;       // nonnegative slack of the row
  Enclosure multiplier;  // the matching multiplier
  ComplementarityStatus status;
  bool strict_ok;  // active with certified-positive multiplier, or
                   // inactive with exactly-zero multiplier
};

struct KktCertificate {
  Multipliers multipliers;
  Enclosure stationarity_residual_inf;
  std::vector<ComplementarityRow> pattern;
  bool strict = false;
};

/// Multipliers from the closed recurrence of the stationarity system:
/// with P = prod_{i=2}^{n-1} 2 y_i, alpha_1 = 1 / (2 y_1 + 1/P),
/// alpha_i = alpha_{i-1} / (2 y_i), pi = -alpha_{n-1},
/// gamma = delta_plus = y_n, beta = delta_minus = 0.
Multipliers compute_multipliers(const ExactLowerSolution& sol);

/// Infinity norm (as an enclosure) of the Lagrangian gradient in y at
/// (y*, m) for the given leader point.
Enclosure stationarity_residual(const LeaderPoint& x, const ExactLowerSolution& sol,
                                const Multipliers& m);

/// Per-row strict-complementarity certification. Throws PrecisionError
/// when some sign cannot be certified at the solution's precision.
KktCertificate certify_strict_complementarity(const LeaderPoint& x,
                                              const ExactLowerSolution& sol,
                                              const Multipliers& m);

/// Independent cross-check: solves the stationarity system for
/// (alpha, pi) as a dense interval linear system (beta and delta fixed by
/// the complementarity observations) and returns the enclosures in the
/// same layout (alpha_1..alpha_{n-1}, pi). Doubles as uniqueness
/// evidence.
std::vector<Enclosure> solve_stationarity_dense(const LeaderPoint& x,
                                                const ExactLowerSolution& sol);

/// Full pipeline with precision escalation: solve, derive multipliers,
/// certify; on an inconclusive enclosure retries with the root width
/// narrowed and precision doubled, up to 8x the instance default.
KktCertificate kkt_verify(const InstanceParams& p, const LeaderPoint& x);

}  // namespace blv

#endif  // BLV_KKT_CERT_HPP

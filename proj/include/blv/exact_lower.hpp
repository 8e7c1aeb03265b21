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

#ifndef BLV_EXACT_LOWER_HPP
#define BLV_EXACT_LOWER_HPP

#include "blv/instance.hpp"

namespace blv {

/// Width 2^-(2^(n-1) + 32): tight enough that y_n = y_1^(2^(n-1)) still
/// carries at least 32 certified bits.
PrecReal default_root_width(int n);

/// Certified enclosure of the unique root of h(z) = z + z^(2^(n-1)) - 1/2
/// in (0, 1/2). Sign-certified bisection: the returned pair satisfies
/// h(lo) <= 0 <= h(hi) with h evaluated under directed rounding, and the
/// working precision escalates automatically until each midpoint sign is
/// certified. Throws PrecisionError when `max_precision` (default 64x the
/// instance default) cannot certify a sign.
Enclosure root_of_h(int n, const PrecReal& target_width, mpfr_prec_t max_precision = 0);

/// The unique follower optimum: chain head from the root enclosure, chain
/// entries by directed repeated squaring, tail fixed exactly to (x1, x2).
struct ExactLowerSolution {
  FollowerPoint y_star;
  Enclosure y1;
  Enclosure objective;  // equals the y1 enclosure
  int n = 0;
};

ExactLowerSolution solve_lower_exact(const InstanceParams& p, const LeaderPoint& x,
                                     const PrecReal* target_width = nullptr,
                                     mpfr_prec_t max_precision = 0);

/// x* = (x_lo_1, x_hi_2) with F* = -x_lo_1 + x_hi_2, plus the follower
/// solution at x*.
struct ExactBilevelSolution {
  LeaderPoint x_star;
  Rational F_star;
  ExactLowerSolution lower;
};

ExactBilevelSolution solve_bilevel_exact(const InstanceParams& p,
                                         const PrecReal* target_width = nullptr);

/// The strictly feasible interior point y_i = i / 2^(2^n) (i < n),
/// y_n = 1/2 - 2^(-2^n), y_{n+1} = 1/2, y_{n+2} = 0, all exact.
FollowerPoint slater_point(const InstanceParams& p);

/// Grid-search oracle: y_1 on a uniform grid over [0, 1/2] with the chain
/// forced tight, y_n = 1/2 - y_1 checked against (y_{n-1})^2, and the tail
/// ranging over the corners of its box. Exact arithmetic; n <= 4,
/// grid <= 2000.
FollowerPoint brute_force_lower(const InstanceParams& p, const LeaderPoint& x, int grid);

}  // namespace blv

#endif  // BLV_EXACT_LOWER_HPP

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

#ifndef BLV_INSTANCE_HPP
#define BLV_INSTANCE_HPP

#include <array>
#include <variant>
#include <vector>

#include "blv/constraint_layout.hpp"
#include "blv/enclosure.hpp"
#include "blv/rational.hpp"

namespace blv {

/// Parameters of the chained-follower bilevel family: n chain variables
/// plus a two-dimensional leader box [x_lo_1, x_hi_1] x [x_lo_2, x_hi_2].
struct InstanceParams {
  static constexpr int kDefaultMaxN = 24;

  int n;
  std::array<Rational, 2> x_lo;
  std::array<Rational, 2> x_hi;

  InstanceParams(int n_in, std::array<Rational, 2> lo, std::array<Rational, 2> hi,
                 int max_n = kDefaultMaxN);

  /// Follower decision vector length (n + 2).
  int dim() const { return n + 2; }
  /// Default working precision in bits: keeps y_n = y_1^(2^(n-1)) with at
  /// least 64 significant bits.
  mpfr_prec_t default_precision() const;
};

struct LeaderPoint {
  Rational x1;
  Rational x2;
};

/// Follower decision vector. Entries are individually either exact
/// rationals or certified enclosures; the mixed form lets a solution keep
/// its tail (y_{n+1}, y_{n+2}) exact while the chain head is enclosed.
class FollowerPoint {
 public:
  using Entry = std::variant<Rational, Enclosure>;

  explicit FollowerPoint(std::vector<Entry> entries, bool eq_structural = false);
  static FollowerPoint exact(std::vector<Rational> values);

  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& entry(int i) const { return entries_.at(static_cast<size_t>(i)); }
  bool is_exact(int i) const;
  bool all_exact() const;

  /// Exact value of entry i; throws when the entry is an enclosure.
  const Rational& exact_entry(int i) const;
  /// Entry i as an enclosure (exact entries become directed-rounded ones).
  Enclosure enclosed_entry(int i, mpfr_prec_t prec) const;

  /// True when the represented point family satisfies y_1 + y_n = 1/2
  /// identically by construction (set by the exact lower-level solver,
  /// whose enclosures parameterize points on that manifold).
  bool equality_structural() const { return eq_structural_; }

 private:
  std::vector<Entry> entries_;
  bool eq_structural_ = false;
};

/// Residuals of all follower constraints at a point, in the numeric
/// regime S (Rational for exact points, Enclosure otherwise).
template <typename S>
struct ConstraintReport {
  S eq_residual;                  // y_1 + y_n - 1/2
  std::vector<S> quad_violations; // y_i^2 - y_{i+1}, i = 1..n-1
  std::vector<S> bound_violations;  // nonneg(1..n+1), tail1_ub, tail2_lb, tail2_ub
  S max_nonlinear_violation;      // max over quad violations, clamped at 0
};

using ExactConstraintReport = ConstraintReport<Rational>;
using EnclosedConstraintReport = ConstraintReport<Enclosure>;
using AnyConstraintReport = std::variant<ExactConstraintReport, EnclosedConstraintReport>;

/// Closed-box membership test for the leader, exact.
bool leader_feasible(const InstanceParams& p, const LeaderPoint& x);

/// All constraint residuals; exact when the point is exact, enclosed
/// otherwise. Requires leader_feasible(p, x).
ExactConstraintReport evaluate_constraints_exact(const InstanceParams& p,
                                                 const LeaderPoint& x,
                                                 const FollowerPoint& y);
EnclosedConstraintReport evaluate_constraints_enclosed(const InstanceParams& p,
                                                       const LeaderPoint& x,
                                                       const FollowerPoint& y,
                                                       mpfr_prec_t prec = 0);
AnyConstraintReport evaluate_constraints(const InstanceParams& p, const LeaderPoint& x,
                                         const FollowerPoint& y);

/// Epsilon-feasibility: linear constraints (equality, nonnegativity and
/// tail bounds) must hold exactly; the quadratic chain rows may be
/// violated by at most eps. On enclosure points the decision is
/// fail-closed: true only when the enclosures certify every condition
/// (the equality via the structural flag). `strict_linear = false`
/// additionally relaxes the linear rows by eps; the default is the
/// strict semantics.
bool is_eps_feasible(const InstanceParams& p, const LeaderPoint& x,
                     const FollowerPoint& y, const Rational& eps,
                     bool strict_linear = true);

/// Leader objective x_1 - 2 y_{n+1} + y_{n+2}; requires an exact tail.
Rational leader_objective(const LeaderPoint& x, const FollowerPoint& y);

/// Follower objective y_1 - y_n (x_1 + x_2 - y_{n+1} - y_{n+2}).
Rational follower_objective_exact(const LeaderPoint& x, const FollowerPoint& y);
Enclosure follower_objective_enclosed(const LeaderPoint& x, const FollowerPoint& y,
                                      mpfr_prec_t prec = 0);

}  // namespace blv

#endif  // BLV_INSTANCE_HPP

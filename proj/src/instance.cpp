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

#include "blv/instance.hpp"

#include <algorithm>

#include "blv/errors.hpp"

namespace blv {

InstanceParams::InstanceParams(int n_in, std::array<Rational, 2> lo,
                               std::array<Rational, 2> hi, int max_n)
    : n(n_in), x_lo(std::move(lo)), x_hi(std::move(hi)) {
  if (n < 2) throw ConfigError("n must be >= 2");
  if (n > max_n) {
    throw LimitError("n = " + std::to_string(n) + " exceeds the exact-arithmetic cap " +
                     std::to_string(max_n));
  }
  for (int i = 0; i < 2; ++i) {
    if (x_lo[static_cast<size_t>(i)] < Rational(1)) {
      throw ConfigError("leader bounds require 1 <= x_lo");
    }
    if (!(x_lo[static_cast<size_t>(i)] < x_hi[static_cast<size_t>(i)])) {
      throw ConfigError("leader bounds require x_lo < x_hi");
    }
  }
}

mpfr_prec_t InstanceParams::default_precision() const {
  long chain = 1L << (n - 1);
  return std::max<mpfr_prec_t>(128, chain + 64);
}

FollowerPoint::FollowerPoint(std::vector<Entry> entries, bool eq_structural)
    : entries_(std::move(entries)), eq_structural_(eq_structural) {}

FollowerPoint FollowerPoint::exact(std::vector<Rational> values) {
  std::vector<Entry> e;
  e.reserve(values.size());
  for (auto& v : values) e.emplace_back(std::move(v));
  return FollowerPoint(std::move(e));
}

bool FollowerPoint::is_exact(int i) const {
  return std::holds_alternative<Rational>(entry(i));
}

bool FollowerPoint::all_exact() const {
  for (const auto& e : entries_) {
    if (!std::holds_alternative<Rational>(e)) return false;
  }
  return true;
}

const Rational& FollowerPoint::exact_entry(int i) const {
  const Entry& e = entry(i);
  if (const auto* r = std::get_if<Rational>(&e)) return *r;
  throw Error("FollowerPoint: entry " + std::to_string(i) + " is not exact");
}

Enclosure FollowerPoint::enclosed_entry(int i, mpfr_prec_t prec) const {
  const Entry& e = entry(i);
  if (const auto* r = std::get_if<Rational>(&e)) {
    return Enclosure::of_rational(*r, prec);
  }
  return std::get<Enclosure>(e);
}

bool leader_feasible(const InstanceParams& p, const LeaderPoint& x) {
  return p.x_lo[0] <= x.x1 && x.x1 <= p.x_hi[0] && p.x_lo[1] <= x.x2 &&
         x.x2 <= p.x_hi[1];
}

namespace {

void check_dims(const InstanceParams& p, const LeaderPoint& x, const FollowerPoint& y) {
  if (y.size() != p.dim()) {
    throw Error("follower point has " + std::to_string(y.size()) +
                " entries, expected " + std::to_string(p.dim()));
  }
  if (!leader_feasible(p, x)) {
    throw Error("leader point outside its box");
  }
}

mpfr_prec_t working_precision(const FollowerPoint& y, mpfr_prec_t requested) {
  if (requested > 0) return requested;
  mpfr_prec_t p = 0;
  for (int i = 0; i < y.size(); ++i) {
    if (!y.is_exact(i)) {
      mpfr_prec_t q = std::get<Enclosure>(y.entry(i)).precision();
      p = (p == 0) ? q : std::min(p, q);
    }
  }
  return p > 0 ? p : 128;
}

}  // namespace

ExactConstraintReport evaluate_constraints_exact(const InstanceParams& p,
                                                 const LeaderPoint& x,
                                                 const FollowerPoint& y) {
  check_dims(p, x, y);
  if (!y.all_exact()) {
    throw Error("evaluate_constraints_exact: point has enclosure entries");
  }
  const int n = p.n;
  auto yv = [&](int k) -> const Rational& { return y.exact_entry(k - 1); };  // y_k

  ExactConstraintReport r;
  r.eq_residual = yv(1) + yv(n) - Rational(1, 2);
  r.quad_violations.reserve(static_cast<size_t>(n - 1));
  Rational maxq(0);
  bool first = true;
  for (int i = 1; i <= n - 1; ++i) {
    Rational viol = yv(i) * yv(i) - yv(i + 1);
    if (first || viol > maxq) maxq = viol;
    first = false;
    r.quad_violations.push_back(std::move(viol));
  }
  r.max_nonlinear_violation = max(maxq, Rational(0));
  r.bound_violations.reserve(static_cast<size_t>(n + 4));
  for (int i = 1; i <= n + 1; ++i) {
    r.bound_violations.push_back(max(-yv(i), Rational(0)));
  }
  r.bound_violations.push_back(max(yv(n + 1) - x.x1, Rational(0)));
  r.bound_violations.push_back(max(-x.x2 - yv(n + 2), Rational(0)));
  r.bound_violations.push_back(max(yv(n + 2) - x.x2, Rational(0)));
  return r;
}

EnclosedConstraintReport evaluate_constraints_enclosed(const InstanceParams& p,
                                                       const LeaderPoint& x,
                                                       const FollowerPoint& y,
                                                       mpfr_prec_t prec) {
  check_dims(p, x, y);
  const int n = p.n;
  const mpfr_prec_t wp = working_precision(y, prec);
  auto yv = [&](int k) { return y.enclosed_entry(k - 1, wp); };

  EnclosedConstraintReport r;
  r.eq_residual = affine_q(Rational(1), yv(1) + yv(n), Rational(-1, 2));
  r.quad_violations.reserve(static_cast<size_t>(n - 1));
  Enclosure prev = yv(1);
  Enclosure maxq = Enclosure::exact_zero(wp);
  for (int i = 1; i <= n - 1; ++i) {
    Enclosure next = yv(i + 1);
    Enclosure viol = prev.sqr() - next;
    maxq = (i == 1) ? viol : Enclosure::max(maxq, viol);
    r.quad_violations.push_back(viol);
    prev = next;
  }
  r.max_nonlinear_violation = maxq.clamp_below_zero();
  r.bound_violations.reserve(static_cast<size_t>(n + 4));
  for (int i = 1; i <= n + 1; ++i) {
    r.bound_violations.push_back(yv(i).neg().clamp_below_zero());
  }
  r.bound_violations.push_back(
      affine_q(Rational(1), yv(n + 1), -x.x1).clamp_below_zero());
  r.bound_violations.push_back(
      affine_q(Rational(-1), yv(n + 2), -x.x2).clamp_below_zero());
  r.bound_violations.push_back(
      affine_q(Rational(1), yv(n + 2), -x.x2).clamp_below_zero());
  return r;
}

AnyConstraintReport evaluate_constraints(const InstanceParams& p, const LeaderPoint& x,
                                         const FollowerPoint& y) {
  if (y.all_exact()) return evaluate_constraints_exact(p, x, y);
  return evaluate_constraints_enclosed(p, x, y);
}

bool is_eps_feasible(const InstanceParams& p, const LeaderPoint& x,
                     const FollowerPoint& y, const Rational& eps,
                     bool strict_linear) {
  if (eps.sign() <= 0) throw ConfigError("is_eps_feasible: eps must be > 0");
  if (y.all_exact()) {
    ExactConstraintReport r = evaluate_constraints_exact(p, x, y);
    bool linear_ok = true;
    if (strict_linear) {
      linear_ok = r.eq_residual.is_zero();
      for (const Rational& b : r.bound_violations) linear_ok = linear_ok && b.is_zero();
    } else {
      linear_ok = abs(r.eq_residual) <= eps;
      for (const Rational& b : r.bound_violations) linear_ok = linear_ok && b <= eps;
    }
    return linear_ok && r.max_nonlinear_violation <= eps;
  }
  // Enclosure point: fail-closed, every condition must be certified.
  EnclosedConstraintReport r = evaluate_constraints_enclosed(p, x, y);
  bool linear_ok = true;
  if (strict_linear) {
    linear_ok = y.equality_structural() || r.eq_residual.is_exactly(Rational(0));
    for (const Enclosure& b : r.bound_violations) {
      linear_ok = linear_ok && b.certified_le(Rational(0));
    }
  } else {
    linear_ok = r.eq_residual.abs().certified_le(eps);
    for (const Enclosure& b : r.bound_violations) {
      linear_ok = linear_ok && b.certified_le(eps);
    }
  }
  return linear_ok && r.max_nonlinear_violation.certified_le(eps);
}

Rational leader_objective(const LeaderPoint& x, const FollowerPoint& y) {
  const int d = y.size();
  return x.x1 - Rational(2) * y.exact_entry(d - 2) + y.exact_entry(d - 1);
}

Rational follower_objective_exact(const LeaderPoint& x, const FollowerPoint& y) {
  const int d = y.size();
  const int n = d - 2;
  Rational gap = x.x1 + x.x2 - y.exact_entry(d - 2) - y.exact_entry(d - 1);
  return y.exact_entry(0) - y.exact_entry(n - 1) * gap;
}

Enclosure follower_objective_enclosed(const LeaderPoint& x, const FollowerPoint& y,
                                      mpfr_prec_t prec) {
  const int d = y.size();
  const int n = d - 2;
  const mpfr_prec_t wp = working_precision(y, prec);
  Enclosure gap = Enclosure::of_rational(x.x1 + x.x2, wp) -
                  y.enclosed_entry(d - 2, wp) - y.enclosed_entry(d - 1, wp);
  return y.enclosed_entry(0, wp) - y.enclosed_entry(n - 1, wp) * gap;
}

}  // namespace blv

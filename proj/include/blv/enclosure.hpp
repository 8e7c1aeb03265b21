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

#ifndef BLV_ENCLOSURE_HPP
#define BLV_ENCLOSURE_HPP

#include "blv/prec_real.hpp"

namespace blv {

/// Certified two-sided enclosure [lo, hi] of an exact real value,
/// maintained with directed rounding: every operation rounds the lower
/// endpoint toward -inf and the upper endpoint toward +inf, so the true
/// value of the expression always stays inside.
class Enclosure {
 public:
  Enclosure() : lo_(kMinDefaultPrec), hi_(kMinDefaultPrec) {}
  Enclosure(PrecReal lo, PrecReal hi);

  static Enclosure point(const PrecReal& x) { return Enclosure(x, x); }
  static Enclosure exact_zero(mpfr_prec_t prec = kMinDefaultPrec);
  static Enclosure of_rational(const Rational& q, mpfr_prec_t prec);
  static Enclosure of_long(long v, mpfr_prec_t prec);

  const PrecReal& lo() const { return lo_; }
  const PrecReal& hi() const { return hi_; }
  mpfr_prec_t precision() const { return min_precision(lo_, hi_); }

  bool is_point() const { return lo_ == hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Rational& q) const { return lo_.cmp(q) <= 0 && hi_.cmp(q) >= 0; }
  bool intersects(const Enclosure& o) const;

  /// +1 when certainly positive, -1 when certainly negative, 0 otherwise
  /// (covers both "contains zero" and "is exactly zero").
  int certified_sign() const;
  bool certified_positive() const { return lo_.sign() > 0; }
  bool certified_negative() const { return hi_.sign() < 0; }
  /// True when every value in the enclosure is <= q (fail-closed check).
  bool certified_le(const Rational& q) const { return hi_.cmp(q) <= 0; }
  bool certified_ge(const Rational& q) const { return lo_.cmp(q) >= 0; }
  bool is_exactly(const Rational& q) const { return is_point() && lo_.cmp(q) == 0; }

  PrecReal width() const;     // hi - lo, rounded up
  PrecReal midpoint() const;  // rounded to nearest

  Enclosure neg() const { return Enclosure(hi_.neg(), lo_.neg()); }
  Enclosure abs() const;
  Enclosure sqr() const;
  /// x^(2^k) by k directed squarings.
  Enclosure pow_2exp(unsigned k) const;
  /// 1/x; requires a certified sign.
  Enclosure recip() const;
  /// Tightest interval contained in both; throws if disjoint.
  Enclosure intersect(const Enclosure& o) const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a) { return a.neg(); }

  /// [max(lo,0), max(hi,0)]: the enclosure of max(value, 0).
  Enclosure clamp_below_zero() const;

  static Enclosure max(const Enclosure& a, const Enclosure& b);

 private:
  static constexpr mpfr_prec_t kMinDefaultPrec = 64;
  PrecReal lo_, hi_;
};

/// Enclosure of q1*a + q2 with rational coefficients, directed rounding.
Enclosure affine_q(const Rational& q1, const Enclosure& a, const Rational& q2);

}  // namespace blv

#endif  // BLV_ENCLOSURE_HPP

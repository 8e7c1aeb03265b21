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

#ifndef BLV_PREC_REAL_HPP
#define BLV_PREC_REAL_HPP

#include <mpfr.h>

#include <string>

#include "blv/rational.hpp"

namespace blv {

enum class Round { Down, Up, Nearest };

mpfr_rnd_t mpfr_round(Round r);

/// Binary floating-point scalar with an explicit precision in bits and
/// correctly rounded operations (MPFR underneath). There is no global
/// rounding mode: every operation that can round takes its direction
/// explicitly. Stored values are exact dyadic rationals; comparisons,
/// including comparisons against Rational, are exact.
class PrecReal {
 public:
  static constexpr mpfr_prec_t kMinPrecision = MPFR_PREC_MIN;

  explicit PrecReal(mpfr_prec_t prec = 128);
  PrecReal(const PrecReal& o);
  PrecReal(PrecReal&& o) noexcept;
  PrecReal& operator=(const PrecReal& o);
  PrecReal& operator=(PrecReal&& o) noexcept;
  ~PrecReal();

  static PrecReal from_long(long v, mpfr_prec_t prec);
  /// Nearest representable at `prec` in direction `r` (sets the inexact
  /// flag through the returned value being != q only).
  static PrecReal from_rational(const Rational& q, mpfr_prec_t prec, Round r);
  /// 2^e, exact at any precision.
  static PrecReal pow2(long e, mpfr_prec_t prec = kMinPrecision);

  mpfr_prec_t precision() const { return mpfr_get_prec(x_); }

  int sign() const { return mpfr_sgn(x_); }
  bool is_zero() const { return mpfr_zero_p(x_) != 0; }

  int cmp(const PrecReal& o) const { return mpfr_cmp(x_, o.x_); }
  int cmp(const Rational& q) const;  // exact comparison

  friend bool operator<(const PrecReal& a, const PrecReal& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const PrecReal& a, const PrecReal& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const PrecReal& a, const PrecReal& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const PrecReal& a, const PrecReal& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const PrecReal& a, const PrecReal& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const PrecReal& a, const PrecReal& b) { return a.cmp(b) != 0; }

  /// The stored value as an exact rational (always dyadic).
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  /// Decimal string rounded in direction `r`; `digits` = 0 picks enough
  /// digits to round-trip the stored precision.
  std::string str(Round r = Round::Nearest, size_t digits = 0) const;

  /// Directed arithmetic at an explicit result precision.
  static PrecReal add(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r);
  static PrecReal sub(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r);
  static PrecReal mul(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r);
  static PrecReal div(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r);
  static PrecReal sqrt(const PrecReal& a, mpfr_prec_t prec, Round r);
  static PrecReal add_q(const PrecReal& a, const Rational& q, mpfr_prec_t prec, Round r);

  /// Exact negation (same precision).
  PrecReal neg() const;
  /// Exact absolute value (same precision).
  PrecReal abs() const;
  /// Same value re-represented at a (usually higher) precision; rounds in
  /// direction `r` if prec is lower than needed.
  PrecReal at_precision(mpfr_prec_t prec, Round r) const;

  /// Operator sugar: result precision = min of operand precisions,
  /// round-to-nearest. Use the static directed forms for enclosures.
  friend PrecReal operator+(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator-(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator*(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator/(const PrecReal& a, const PrecReal& b);
  friend PrecReal operator-(const PrecReal& a) { return a.neg(); }

  mpfr_srcptr raw() const { return x_; }
  mpfr_ptr raw() { return x_; }

 private:
  mpfr_t x_;
};

mpfr_prec_t min_precision(const PrecReal& a, const PrecReal& b);

}  // namespace blv

#endif  // BLV_PREC_REAL_HPP

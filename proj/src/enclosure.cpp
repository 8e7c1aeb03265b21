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

#include "blv/enclosure.hpp"

#include <algorithm>
#include <array>

#include "blv/errors.hpp"

namespace blv {

Enclosure::Enclosure(PrecReal lo, PrecReal hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw Error("Enclosure: lo > hi");
}

Enclosure Enclosure::exact_zero(mpfr_prec_t prec) {
  PrecReal z(prec);
  return Enclosure(z, z);
}

Enclosure Enclosure::of_rational(const Rational& q, mpfr_prec_t prec) {
  return Enclosure(PrecReal::from_rational(q, prec, Round::Down),
                   PrecReal::from_rational(q, prec, Round::Up));
}

Enclosure Enclosure::of_long(long v, mpfr_prec_t prec) {
  PrecReal x = PrecReal::from_long(v, std::max<mpfr_prec_t>(prec, 64));
  return Enclosure(x, x);
}

bool Enclosure::intersects(const Enclosure& o) const {
  return lo_ <= o.hi_ && o.lo_ <= hi_;
}

int Enclosure::certified_sign() const {
  if (certified_positive()) return 1;
  if (certified_negative()) return -1;
  return 0;
}

PrecReal Enclosure::width() const {
  return PrecReal::sub(hi_, lo_, precision(), Round::Up);
}

PrecReal Enclosure::midpoint() const {
  PrecReal s = PrecReal::add(lo_, hi_, precision() + 1, Round::Nearest);
  return PrecReal::mul(s, PrecReal::pow2(-1), precision() + 1, Round::Nearest);
}

Enclosure Enclosure::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return neg();
  PrecReal m = lo_.neg();
  return Enclosure(PrecReal(precision()), m > hi_ ? m : hi_);
}

Enclosure Enclosure::sqr() const {
  mpfr_prec_t p = precision();
  if (lo_.sign() >= 0) {
    return Enclosure(PrecReal::mul(lo_, lo_, p, Round::Down),
                     PrecReal::mul(hi_, hi_, p, Round::Up));
  }
  if (hi_.sign() <= 0) {
    return Enclosure(PrecReal::mul(hi_, hi_, p, Round::Down),
                     PrecReal::mul(lo_, lo_, p, Round::Up));
  }
  PrecReal a = PrecReal::mul(lo_, lo_, p, Round::Up);
  PrecReal b = PrecReal::mul(hi_, hi_, p, Round::Up);
  return Enclosure(PrecReal(p), a > b ? a : b);
}

Enclosure Enclosure::pow_2exp(unsigned k) const {
  Enclosure out = *this;
  for (unsigned i = 0; i < k; ++i) out = out.sqr();
  return out;
}

Enclosure Enclosure::recip() const {
  if (certified_sign() == 0) {
    throw PrecisionError("Enclosure::recip: sign not certified");
  }
  mpfr_prec_t p = precision();
  PrecReal one = PrecReal::from_long(1, p);
  return Enclosure(PrecReal::div(one, hi_, p, Round::Down),
                   PrecReal::div(one, lo_, p, Round::Up));
}

Enclosure Enclosure::intersect(const Enclosure& o) const {
  const PrecReal& l = lo_ >= o.lo_ ? lo_ : o.lo_;
  const PrecReal& h = hi_ <= o.hi_ ? hi_ : o.hi_;
  if (l > h) throw Error("Enclosure::intersect: disjoint enclosures");
  return Enclosure(l, h);
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  mpfr_prec_t p = std::min(a.precision(), b.precision());
  return Enclosure(PrecReal::add(a.lo_, b.lo_, p, Round::Down),
                   PrecReal::add(a.hi_, b.hi_, p, Round::Up));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return a + b.neg();
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  mpfr_prec_t p = std::min(a.precision(), b.precision());
  std::array<const PrecReal*, 2> as = {&a.lo_, &a.hi_};
  std::array<const PrecReal*, 2> bs = {&b.lo_, &b.hi_};
  bool first = true;
  PrecReal lo(p), hi(p);
  for (const PrecReal* x : as) {
    for (const PrecReal* y : bs) {
      PrecReal d = PrecReal::mul(*x, *y, p, Round::Down);
      PrecReal u = PrecReal::mul(*x, *y, p, Round::Up);
      if (first || d < lo) lo = d;
      if (first || u > hi) hi = u;
      first = false;
    }
  }
  return Enclosure(lo, hi);
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  return a * b.recip();
}

Enclosure Enclosure::clamp_below_zero() const {
  mpfr_prec_t p = precision();
  PrecReal z(p);
  return Enclosure(lo_.sign() > 0 ? lo_ : z, hi_.sign() > 0 ? hi_ : z);
}

Enclosure Enclosure::max(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo_ >= b.lo_ ? a.lo_ : b.lo_, a.hi_ >= b.hi_ ? a.hi_ : b.hi_);
}

Enclosure affine_q(const Rational& q1, const Enclosure& a, const Rational& q2) {
  mpfr_prec_t p = a.precision();
  Enclosure c1 = Enclosure::of_rational(q1, p);
  Enclosure t = c1 * a;
  return Enclosure(PrecReal::add_q(t.lo(), q2, p, Round::Down),
                   PrecReal::add_q(t.hi(), q2, p, Round::Up));
}

}  // namespace blv

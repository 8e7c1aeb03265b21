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

#include "blv/prec_real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blv/errors.hpp"

namespace blv {

mpfr_rnd_t mpfr_round(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      return MPFR_RNDN;
  }
  return MPFR_RNDN;
}

PrecReal::PrecReal(mpfr_prec_t prec) {
  if (prec < kMinPrecision) throw Error("PrecReal: precision below minimum");
  mpfr_init2(x_, prec);
  mpfr_set_zero(x_, 1);
}

PrecReal::PrecReal(const PrecReal& o) {
  mpfr_init2(x_, o.precision());
  mpfr_set(x_, o.x_, MPFR_RNDN);
}

PrecReal::PrecReal(PrecReal&& o) noexcept {
  mpfr_init2(x_, kMinPrecision);
  mpfr_swap(x_, o.x_);
}

PrecReal& PrecReal::operator=(const PrecReal& o) {
  if (this != &o) {
    mpfr_set_prec(x_, o.precision());
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  return *this;
}

PrecReal& PrecReal::operator=(PrecReal&& o) noexcept {
  if (this != &o) mpfr_swap(x_, o.x_);
  return *this;
}

PrecReal::~PrecReal() { mpfr_clear(x_); }

PrecReal PrecReal::from_long(long v, mpfr_prec_t prec) {
  PrecReal out(std::max<mpfr_prec_t>(prec, kMinPrecision));
  if (mpfr_set_si(out.x_, v, MPFR_RNDN) != 0) {
    throw Error("PrecReal::from_long: value not representable at precision");
  }
  return out;
}

PrecReal PrecReal::from_rational(const Rational& q, mpfr_prec_t prec, Round r) {
  PrecReal out(prec);
  mpfr_set_q(out.x_, q.mpq().get_mpq_t(), mpfr_round(r));
  return out;
}

PrecReal PrecReal::pow2(long e, mpfr_prec_t prec) {
  PrecReal out(prec);
  mpfr_set_si_2exp(out.x_, 1, e, MPFR_RNDN);
  return out;
}

int PrecReal::cmp(const Rational& q) const {
  return mpfr_cmp_q(x_, q.mpq().get_mpq_t());
}

Rational PrecReal::to_rational() const {
  if (is_zero()) return Rational(0);
  if (!mpfr_number_p(x_)) throw Error("PrecReal::to_rational: not finite");
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x_);
  mpz_class num = mant;
  mpz_class den(1);
  if (e >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), mant.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return Rational(num, den);
}

std::string PrecReal::str(Round r, size_t digits) const {
  if (digits == 0) {
    digits = static_cast<size_t>(
        std::ceil(static_cast<double>(precision()) * 0.30103)) + 2;
  }
  char rc = 'N';
  if (r == Round::Down) rc = 'D';
  if (r == Round::Up) rc = 'U';
  std::string fmt = "%." + std::to_string(digits) + "R" + rc + "e";
  int need = mpfr_snprintf(nullptr, 0, fmt.c_str(), x_);
  std::vector<char> buf(static_cast<size_t>(need) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), x_);
  return std::string(buf.data());
}

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

PrecReal binop(BinOp op, const PrecReal& a, const PrecReal& b, mpfr_prec_t prec,
               Round r) {
  PrecReal out(prec);
  op(out.raw(), a.raw(), b.raw(), mpfr_round(r));
  return out;
}

}  // namespace

PrecReal PrecReal::add(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r) {
  return binop(mpfr_add, a, b, prec, r);
}

PrecReal PrecReal::sub(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r) {
  return binop(mpfr_sub, a, b, prec, r);
}

PrecReal PrecReal::mul(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r) {
  return binop(mpfr_mul, a, b, prec, r);
}

PrecReal PrecReal::div(const PrecReal& a, const PrecReal& b, mpfr_prec_t prec, Round r) {
  if (b.is_zero()) throw Error("PrecReal: division by zero");
  return binop(mpfr_div, a, b, prec, r);
}

PrecReal PrecReal::sqrt(const PrecReal& a, mpfr_prec_t prec, Round r) {
  if (a.sign() < 0) throw Error("PrecReal: sqrt of negative value");
  PrecReal out(prec);
  mpfr_sqrt(out.raw(), a.raw(), mpfr_round(r));
  return out;
}

PrecReal PrecReal::add_q(const PrecReal& a, const Rational& q, mpfr_prec_t prec, Round r) {
  PrecReal out(prec);
  mpfr_add_q(out.raw(), a.raw(), q.mpq().get_mpq_t(), mpfr_round(r));
  return out;
}

PrecReal PrecReal::neg() const {
  PrecReal out(precision());
  mpfr_neg(out.x_, x_, MPFR_RNDN);  // exact: same precision
  return out;
}

PrecReal PrecReal::abs() const {
  PrecReal out(precision());
  mpfr_abs(out.x_, x_, MPFR_RNDN);  // exact: same precision
  return out;
}

PrecReal PrecReal::at_precision(mpfr_prec_t prec, Round r) const {
  PrecReal out(prec);
  mpfr_set(out.x_, x_, mpfr_round(r));
  return out;
}

mpfr_prec_t min_precision(const PrecReal& a, const PrecReal& b) {
  return std::min(a.precision(), b.precision());
}

PrecReal operator+(const PrecReal& a, const PrecReal& b) {
  return PrecReal::add(a, b, min_precision(a, b), Round::Nearest);
}

PrecReal operator-(const PrecReal& a, const PrecReal& b) {
  return PrecReal::sub(a, b, min_precision(a, b), Round::Nearest);
}

PrecReal operator*(const PrecReal& a, const PrecReal& b) {
  return PrecReal::mul(a, b, min_precision(a, b), Round::Nearest);
}

PrecReal operator/(const PrecReal& a, const PrecReal& b) {
  return PrecReal::div(a, b, min_precision(a, b), Round::Nearest);
}

}  // namespace blv

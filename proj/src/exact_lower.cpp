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

#include "blv/exact_lower.hpp"

#include <algorithm>

#include "blv/errors.hpp"

namespace blv {

PrecReal default_root_width(int n) {
  long chain = 1L << (n - 1);
  return PrecReal::pow2(-(chain + 32));
}

namespace {

// Sign of h(t) = t + t^(2^(n-1)) - 1/2 at an exactly stored dyadic t,
// certified through a directed-rounding enclosure. Doubles the working
// precision until the enclosure excludes zero (or hits the cap).
int certified_h_sign(const PrecReal& t, int n, mpfr_prec_t start_prec,
                     mpfr_prec_t max_prec, bool* exact_zero) {
  *exact_zero = false;
  mpfr_prec_t q = std::max(start_prec, t.precision());
  for (;;) {
    PrecReal tq = t.at_precision(q, Round::Nearest);  // exact: q >= bits(t)
    Enclosure e = Enclosure::point(tq);
    Enclosure h = affine_q(Rational(1), e + e.pow_2exp(static_cast<unsigned>(n - 1)),
                           Rational(-1, 2));
    if (h.certified_negative()) return -1;
    if (h.certified_positive()) return 1;
    if (h.is_exactly(Rational(0))) {
      *exact_zero = true;
      return 0;
    }
    if (q >= max_prec) {
      throw PrecisionError("root_of_h: sign not certified at maximum precision " +
                           std::to_string(max_prec) + " bits");
    }
    q = std::min<mpfr_prec_t>(q * 2, max_prec);
  }
}

}  // namespace

Enclosure root_of_h(int n, const PrecReal& target_width, mpfr_prec_t max_precision) {
  if (n < 2) throw ConfigError("root_of_h: n must be >= 2");
  if (target_width.sign() <= 0) throw ConfigError("root_of_h: target width must be > 0");
  const long chain = 1L << (n - 1);
  // Bisection points at step k are dyadic with k+2 significant bits, so a
  // fixed working precision covering all steps keeps every midpoint exact.
  long steps_needed = 0;
  if (target_width.cmp(Rational(1)) < 0) {
    steps_needed = -static_cast<long>(mpfr_get_exp(target_width.raw())) + 2;
  }
  const mpfr_prec_t work_prec =
      std::max<mpfr_prec_t>({128, chain + 64, steps_needed + 8});
  if (max_precision == 0) max_precision = work_prec * 64;

  PrecReal lo = PrecReal::from_long(0, work_prec);
  PrecReal hi = PrecReal::pow2(-1, work_prec);
  // h(0) = -1/2 < 0 and h(1/2) = 2^-(2^(n-1)) > 0; h is strictly
  // increasing on [0, 1/2], so the signs certify the bracket throughout.
  for (;;) {
    PrecReal w = PrecReal::sub(hi, lo, work_prec, Round::Up);
    if (w.cmp(target_width) <= 0) break;
    PrecReal mid = PrecReal::mul(PrecReal::add(lo, hi, work_prec + 2, Round::Nearest),
                                 PrecReal::pow2(-1), work_prec + 2, Round::Nearest);
    bool exact_zero = false;
    int s = certified_h_sign(mid, n, work_prec, max_precision, &exact_zero);
    if (exact_zero) return Enclosure::point(mid);
    if (s < 0) {
      lo = mid.at_precision(work_prec, Round::Nearest);
    } else {
      hi = mid.at_precision(work_prec, Round::Nearest);
    }
  }
  return Enclosure(lo, hi);
}

ExactLowerSolution solve_lower_exact(const InstanceParams& p, const LeaderPoint& x,
                                     const PrecReal* target_width,
                                     mpfr_prec_t max_precision) {
  if (!leader_feasible(p, x)) {
    throw Error("solve_lower_exact: leader point outside its box");
  }
  const int n = p.n;
  PrecReal width = target_width != nullptr ? *target_width : default_root_width(n);
  Enclosure y1 = root_of_h(n, width, max_precision);

  std::vector<FollowerPoint::Entry> entries(static_cast<size_t>(p.dim()),
                                            FollowerPoint::Entry(Rational(0)));
  entries[0] = y1;
  Enclosure cur = y1;
  for (int i = 2; i <= n; ++i) {
    cur = cur.sqr();  // y_i = y_1^(2^(i-1)) by repeated directed squaring
    if (i < n) entries[static_cast<size_t>(i - 1)] = cur;
  }
  // Two valid enclosures for y_n: the power chain and 1/2 - y_1 from the
  // equality; their intersection keeps the tighter endpoints.
  Enclosure from_eq = affine_q(Rational(-1), y1, Rational(1, 2));
  entries[static_cast<size_t>(n - 1)] = cur.intersect(from_eq);
  entries[static_cast<size_t>(n)] = x.x1;
  entries[static_cast<size_t>(n + 1)] = x.x2;

  ExactLowerSolution sol{FollowerPoint(std::move(entries), /*eq_structural=*/true),
                         y1, y1, n};
  return sol;
}

ExactBilevelSolution solve_bilevel_exact(const InstanceParams& p,
                                         const PrecReal* target_width) {
  LeaderPoint x_star{p.x_lo[0], p.x_hi[1]};
  Rational f_star = -p.x_lo[0] + p.x_hi[1];
  return ExactBilevelSolution{x_star, f_star,
                              solve_lower_exact(p, x_star, target_width)};
}

FollowerPoint slater_point(const InstanceParams& p) {
  const int n = p.n;
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 1ul << static_cast<unsigned>(n));
  std::vector<Rational> y(static_cast<size_t>(p.dim()));
  for (int i = 1; i <= n - 1; ++i) {
    y[static_cast<size_t>(i - 1)] = Rational(mpz_class(i), den);
  }
  y[static_cast<size_t>(n - 1)] = Rational(1, 2) - Rational(mpz_class(1), den);
  y[static_cast<size_t>(n)] = Rational(1, 2);
  y[static_cast<size_t>(n + 1)] = Rational(0);
  return FollowerPoint::exact(std::move(y));
}

FollowerPoint brute_force_lower(const InstanceParams& p, const LeaderPoint& x,
                                int grid) {
  if (p.n > 4) throw LimitError("brute_force_lower: n must be <= 4");
  if (grid < 1 || grid > 2000) throw LimitError("brute_force_lower: grid must be in [1, 2000]");
  if (!leader_feasible(p, x)) {
    throw Error("brute_force_lower: leader point outside its box");
  }
  const int n = p.n;
  const std::array<Rational, 2> t1c = {Rational(0), x.x1};
  const std::array<Rational, 2> t2c = {-x.x2, x.x2};

  bool have_best = false;
  Rational best_value(0);
  std::vector<Rational> best;
  std::vector<Rational> y(static_cast<size_t>(p.dim()));
  for (int k = 0; k <= grid; ++k) {
    y[0] = Rational(k, 2L * grid);
    for (int i = 2; i <= n - 1; ++i) {
      y[static_cast<size_t>(i - 1)] =
          y[static_cast<size_t>(i - 2)] * y[static_cast<size_t>(i - 2)];
    }
    y[static_cast<size_t>(n - 1)] = Rational(1, 2) - y[0];
    const Rational& ylast = y[static_cast<size_t>(n - 2)];
    if (ylast * ylast > y[static_cast<size_t>(n - 1)]) continue;  // chain broken
    for (const Rational& t1 : t1c) {
      for (const Rational& t2 : t2c) {
        y[static_cast<size_t>(n)] = t1;
        y[static_cast<size_t>(n + 1)] = t2;
        Rational value = y[0] - y[static_cast<size_t>(n - 1)] * (x.x1 + x.x2 - t1 - t2);
        if (!have_best || value > best_value) {
          have_best = true;
          best_value = value;
          best = y;
        }
      }
    }
  }
  return FollowerPoint::exact(std::move(best));
}

}  // namespace blv

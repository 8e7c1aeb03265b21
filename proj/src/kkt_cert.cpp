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

#include "blv/kkt_cert.hpp"

#include <algorithm>

#include "blv/errors.hpp"

namespace blv {

namespace {

Enclosure chain_entry(const ExactLowerSolution& sol, int k) {
  // y_k for k in 1..n; all chain entries of an exact solution are enclosures.
  return std::get<Enclosure>(sol.y_star.entry(k - 1));
}

Rational exact_tail_gap(const LeaderPoint& x, const ExactLowerSolution& sol) {
  const int n = sol.n;
  return x.x1 + x.x2 - sol.y_star.exact_entry(n) - sol.y_star.exact_entry(n + 1);
}

}  // namespace

Multipliers compute_multipliers(const ExactLowerSolution& sol) {
  const int n = sol.n;
  const mpfr_prec_t prec = sol.y1.precision();
  const Enclosure two = Enclosure::of_long(2, prec);
  const Enclosure zero = Enclosure::exact_zero(prec);

  // P = prod_{i=2}^{n-1} 2 y_i (empty product for n = 2).
  Enclosure big_p = Enclosure::of_long(1, prec);
  for (int i = 2; i <= n - 1; ++i) big_p = big_p * (two * chain_entry(sol, i));
  if (!big_p.certified_positive()) {
    throw PrecisionError("compute_multipliers: chain product sign not certified");
  }

  Enclosure denom = two * chain_entry(sol, 1) + big_p.recip();
  if (!denom.certified_positive()) {
    throw PrecisionError("compute_multipliers: alpha_1 denominator sign not certified");
  }

  Multipliers m;
  m.alpha.reserve(static_cast<size_t>(n - 1));
  m.alpha.push_back(denom.recip());
  for (int i = 2; i <= n - 1; ++i) {
    Enclosure scale = two * chain_entry(sol, i);
    if (!scale.certified_positive()) {
      throw PrecisionError("compute_multipliers: 2 y_i sign not certified");
    }
    m.alpha.push_back(m.alpha.back() * scale.recip());
  }
  m.pi = m.alpha.back().neg();
  m.beta.assign(static_cast<size_t>(n + 1), zero);
  m.gamma = chain_entry(sol, n);
  m.delta_minus = zero;
  m.delta_plus = chain_entry(sol, n);
  return m;
}

Enclosure stationarity_residual(const LeaderPoint& x, const ExactLowerSolution& sol,
                                const Multipliers& m) {
  const int n = sol.n;
  if (static_cast<int>(m.alpha.size()) != n - 1 ||
      static_cast<int>(m.beta.size()) != n + 1) {
    throw Error("stationarity_residual: multiplier dimensions disagree with n");
  }
  const mpfr_prec_t prec = sol.y1.precision();
  const Enclosure two = Enclosure::of_long(2, prec);
  std::vector<Enclosure> grad;
  grad.reserve(static_cast<size_t>(n + 2));

  // d/dy_1: -1 + 2 alpha_1 y_1 - beta_1 - pi
  grad.push_back(affine_q(Rational(1),
                          two * m.alpha[0] * chain_entry(sol, 1) - m.beta[0] - m.pi,
                          Rational(-1)));
  // d/dy_i: -alpha_{i-1} + 2 alpha_i y_i - beta_i, i = 2..n-1
  for (int i = 2; i <= n - 1; ++i) {
    grad.push_back(two * m.alpha[static_cast<size_t>(i - 1)] * chain_entry(sol, i) -
                   m.alpha[static_cast<size_t>(i - 2)] -
                   m.beta[static_cast<size_t>(i - 1)]);
  }
  // d/dy_n: (x1 + x2 - y_{n+1} - y_{n+2}) - alpha_{n-1} - beta_n - pi
  grad.push_back(Enclosure::of_rational(exact_tail_gap(x, sol), prec) -
                 m.alpha[static_cast<size_t>(n - 2)] -
                 m.beta[static_cast<size_t>(n - 1)] - m.pi);
  // d/dy_{n+1}: -y_n - beta_{n+1} + gamma
  grad.push_back(m.gamma - chain_entry(sol, n) - m.beta[static_cast<size_t>(n)]);
  // d/dy_{n+2}: -y_n - delta_minus + delta_plus
  grad.push_back(m.delta_plus - chain_entry(sol, n) - m.delta_minus);

  Enclosure norm = grad.front().abs();
  for (size_t i = 1; i < grad.size(); ++i) norm = Enclosure::max(norm, grad[i].abs());
  return norm;
}

namespace {

// Strictness of one row: an active row needs a certified-positive
// multiplier, an inactive row an exactly-zero one. A multiplier enclosure
// that straddles zero without being the exact zero is inconclusive.
bool strict_row_ok(ComplementarityStatus status, const Enclosure& mult) {
  const bool exactly_zero = mult.is_exactly(Rational(0));
  if (status == ComplementarityStatus::Inactive) return exactly_zero;
  if (mult.certified_positive()) return true;
  if (exactly_zero || mult.certified_negative()) return false;
  throw PrecisionError("certify_strict_complementarity: multiplier sign not certified");
}

}  // namespace

KktCertificate certify_strict_complementarity(const LeaderPoint& x,
                                              const ExactLowerSolution& sol,
                                              const Multipliers& m) {
  const int n = sol.n;
  const mpfr_prec_t prec = sol.y1.precision();
  KktCertificate cert;
  cert.multipliers = m;
  cert.stationarity_residual_inf = stationarity_residual(x, sol, m);
  cert.pattern.reserve(static_cast<size_t>(num_inequalities(n)));

  bool all_ok = true;
  auto push = [&](FollowerConstraintId id, Enclosure slack, Enclosure mult,
                  ComplementarityStatus status) {
    bool ok = strict_row_ok(status, mult);
    if (status == ComplementarityStatus::Inactive && !slack.certified_positive()) {
      // A structurally inactive row whose slack cannot be certified
      // positive is inconclusive, not a violation.
      throw PrecisionError("certify_strict_complementarity: slack sign not certified for " +
                           constraint_name(id));
    }
    if (status != ComplementarityStatus::Inactive && slack.certified_positive()) {
      ok = false;  // declared active but provably slack: pattern mismatch
    }
    all_ok = all_ok && ok;
    cert.pattern.push_back(ComplementarityRow{id, std::move(slack), std::move(mult),
                                              status, ok});
  };

  for (int i = 1; i <= n - 1; ++i) {
    Enclosure slack = chain_entry(sol, i + 1) - chain_entry(sol, i).sqr();
    push({FollowerConstraintKind::Quad, i}, slack, m.alpha[static_cast<size_t>(i - 1)],
         ComplementarityStatus::ActiveStructural);
  }
  for (int i = 1; i <= n; ++i) {
    push({FollowerConstraintKind::NonNeg, i}, chain_entry(sol, i),
         m.beta[static_cast<size_t>(i - 1)], ComplementarityStatus::Inactive);
  }
  const Rational& t1 = sol.y_star.exact_entry(n);
  const Rational& t2 = sol.y_star.exact_entry(n + 1);
  push({FollowerConstraintKind::NonNeg, n + 1}, Enclosure::of_rational(t1, prec),
       m.beta[static_cast<size_t>(n)], ComplementarityStatus::Inactive);
  push({FollowerConstraintKind::Tail1Ub, 0}, Enclosure::of_rational(x.x1 - t1, prec),
       m.gamma,
       x.x1 == t1 ? ComplementarityStatus::ActiveExact : ComplementarityStatus::Inactive);
  push({FollowerConstraintKind::Tail2Lb, 0}, Enclosure::of_rational(t2 + x.x2, prec),
       m.delta_minus,
       t2 == -x.x2 ? ComplementarityStatus::ActiveExact : ComplementarityStatus::Inactive);
  push({FollowerConstraintKind::Tail2Ub, 0}, Enclosure::of_rational(x.x2 - t2, prec),
       m.delta_plus,
       t2 == x.x2 ? ComplementarityStatus::ActiveExact : ComplementarityStatus::Inactive);

  cert.strict = all_ok;
  return cert;
}

std::vector<Enclosure> solve_stationarity_dense(const LeaderPoint& x,
                                                const ExactLowerSolution& sol) {
  const int n = sol.n;
  const mpfr_prec_t prec = sol.y1.precision();
  const Enclosure zero = Enclosure::exact_zero(prec);
  const Enclosure one = Enclosure::of_long(1, prec);
  const Enclosure two = Enclosure::of_long(2, prec);

  // Unknowns u = (alpha_1, ..., alpha_{n-1}, pi); rows from the chain
  // part of the gradient. beta and delta are pinned at zero by the
  // complementarity pattern (inactive rows).
  const int dim = n;
  std::vector<std::vector<Enclosure>> aug(
      static_cast<size_t>(dim), std::vector<Enclosure>(static_cast<size_t>(dim + 1), zero));
  aug[0][0] = two * chain_entry(sol, 1);
  aug[0][static_cast<size_t>(dim - 1)] = one.neg();
  aug[0][static_cast<size_t>(dim)] = one;
  for (int i = 2; i <= n - 1; ++i) {
    auto& row = aug[static_cast<size_t>(i - 1)];
    row[static_cast<size_t>(i - 2)] = one.neg();
    row[static_cast<size_t>(i - 1)] = two * chain_entry(sol, i);
  }
  auto& last = aug[static_cast<size_t>(dim - 1)];
  last[static_cast<size_t>(dim - 2)] = one.neg();
  last[static_cast<size_t>(dim - 1)] = one.neg();
  last[static_cast<size_t>(dim)] =
      Enclosure::of_rational(-exact_tail_gap(x, sol), prec);

  // Interval Gaussian elimination with midpoint-magnitude pivoting.
  std::vector<int> perm(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) perm[static_cast<size_t>(i)] = i;
  for (int k = 0; k < dim; ++k) {
    int pivot = -1;
    PrecReal best(2);
    for (int r = k; r < dim; ++r) {
      const Enclosure& cand = aug[static_cast<size_t>(r)][static_cast<size_t>(k)];
      if (cand.certified_sign() == 0) continue;
      PrecReal mag = cand.midpoint().abs();
      if (pivot < 0 || mag > best) {
        pivot = r;
        best = mag;
      }
    }
    if (pivot < 0) {
      throw PrecisionError("solve_stationarity_dense: no certified pivot");
    }
    std::swap(aug[static_cast<size_t>(pivot)], aug[static_cast<size_t>(k)]);
    for (int r = k + 1; r < dim; ++r) {
      const Enclosure factor = aug[static_cast<size_t>(r)][static_cast<size_t>(k)] /
                               aug[static_cast<size_t>(k)][static_cast<size_t>(k)];
      for (int c = k; c <= dim; ++c) {
        aug[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            aug[static_cast<size_t>(r)][static_cast<size_t>(c)] -
            factor * aug[static_cast<size_t>(k)][static_cast<size_t>(c)];
      }
    }
  }
  std::vector<Enclosure> u(static_cast<size_t>(dim), zero);
  for (int i = dim - 1; i >= 0; --i) {
    Enclosure rhs = aug[static_cast<size_t>(i)][static_cast<size_t>(dim)];
    for (int j = i + 1; j < dim; ++j) {
      rhs = rhs - aug[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                      u[static_cast<size_t>(j)];
    }
    u[static_cast<size_t>(i)] = rhs / aug[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  return u;
}

KktCertificate kkt_verify(const InstanceParams& p, const LeaderPoint& x) {
  const long chain = 1L << (p.n - 1);
  const long base_bits = chain + 32;
  // Escalation: double the certified root bits per attempt, up to 8x.
  for (int attempt = 0;; ++attempt) {
    const long bits = base_bits << attempt;
    PrecReal width = PrecReal::pow2(-bits);
    try {
      ExactLowerSolution sol = solve_lower_exact(p, x, &width);
      Multipliers m = compute_multipliers(sol);
      return certify_strict_complementarity(x, sol, m);
    } catch (const PrecisionError&) {
      if (attempt >= 3) throw;
    }
  }
}

}  // namespace blv

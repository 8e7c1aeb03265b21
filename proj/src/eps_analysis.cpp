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

#include "blv/eps_analysis.hpp"

#include <random>

#include "blv/errors.hpp"

namespace blv {

FollowerPoint eps_point(const InstanceParams& p, const LeaderPoint& x,
                        const Rational& tail1, const Rational& tail2) {
  if (!leader_feasible(p, x)) {
    throw Error("eps_point: leader point outside its box");
  }
  if (tail1 < Rational(0) || tail1 > x.x1 || tail2 < -x.x2 || tail2 > x.x2) {
    throw Error("eps_point: tail outside its bounds");
  }
  const int n = p.n;
  std::vector<Rational> y(static_cast<size_t>(p.dim()));
  for (int i = 1; i <= n - 1; ++i) {
    y[static_cast<size_t>(i - 1)] = pow2tower(static_cast<unsigned>(i - 1));
  }
  y[static_cast<size_t>(n - 1)] = Rational(0);
  y[static_cast<size_t>(n)] = tail1;
  y[static_cast<size_t>(n + 1)] = tail2;
  return FollowerPoint::exact(std::move(y));
}

Rational eps_threshold(const InstanceParams& p) {
  return pow2tower(static_cast<unsigned>(p.n - 1));
}

GapReport solve_bilevel_eps(const EpsScenario& s) {
  if (s.eps.sign() <= 0) throw ConfigError("solve_bilevel_eps: eps must be > 0");
  const Rational threshold = eps_threshold(s.params);
  if (s.eps < threshold) {
    throw RegimeError(
        "eps below the admissibility threshold 2^(-2^(n-1)) = " + threshold.str() +
            "; the relaxed chain point is not eps-feasible",
        threshold.str());
  }
  ExactBilevelSolution exact = solve_bilevel_exact(s.params);

  LeaderPoint x{};
  Rational tail1, tail2;
  if (s.mode == EpsMode::Optimistic) {
    x = LeaderPoint{s.params.x_hi[0], s.params.x_hi[1]};
    tail1 = Rational(0);
    tail2 = x.x2;
  } else {
    x = LeaderPoint{s.params.x_lo[0], s.params.x_lo[1]};
    tail1 = x.x1;
    tail2 = -x.x2;
  }
  FollowerPoint y = eps_point(s.params, x, tail1, tail2);
  Rational f_eps = leader_objective(x, y);
  Rational distance = abs(x.x1 - exact.x_star.x1) + abs(x.x2 - exact.x_star.x2);
  Rational gap = abs(f_eps - exact.F_star);

  return GapReport{std::move(exact), x,   std::move(y), f_eps, distance,
                   gap,              threshold, s.eps, s.mode};
}

int min_n_for_eps(const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) {
    throw ConfigError("min_n_for_eps: eps must be in (0, 1)");
  }
  for (int n = 2;; ++n) {
    if (pow2tower(static_cast<unsigned>(n - 1)) <= eps) return n;
  }
}

namespace {

// Uniform rational in [0, 1] with denominator 2^20, from a seeded engine.
Rational unit_rational(std::mt19937_64& rng) {
  constexpr long kDen = 1L << 20;
  std::uniform_int_distribution<long> dist(0, kDen);
  return Rational(dist(rng), kDen);
}

}  // namespace

Rational superoptimality_certificate(const InstanceParams& p, const Rational& eps,
                                     int samples, std::uint64_t seed) {
  const Rational threshold = eps_threshold(p);
  if (eps < threshold) {
    throw RegimeError("superoptimality_certificate: eps below threshold " +
                          threshold.str(),
                      threshold.str());
  }
  const Rational half(1, 2);
  const int n = p.n;
  std::mt19937_64 rng(seed);

  auto check_point = [&](const LeaderPoint& x, const FollowerPoint& y) {
    // Rewrite through the equality row: with y_1 = 1/2 - y_n the
    // objective equals 1/2 - y_n - y_n (x1 + x2 - y_{n+1} - y_{n+2}).
    Rational yn = y.exact_entry(n - 1);
    Rational t1 = y.exact_entry(n);
    Rational t2 = y.exact_entry(n + 1);
    Rational direct = follower_objective_exact(x, y);
    Rational rewritten = half - yn - yn * (x.x1 + x.x2 - t1 - t2);
    if (direct != rewritten) {
      throw InvariantError("superoptimality_certificate: objective rewrite failed");
    }
    // The sign argument: the tail gap is nonnegative because the linear
    // bounds hold exactly, and y_n >= 0 is linear, hence not relaxed.
    if (yn.sign() < 0 || t1 < Rational(0) || t1 > x.x1 || t2 < -x.x2 || t2 > x.x2) {
      throw InvariantError("superoptimality_certificate: sampled point breaks a linear row");
    }
    if (direct > half) {
      throw InvariantError("superoptimality_certificate: sample exceeds 1/2");
    }
  };

  // The relaxed chain point attains 1/2 exactly.
  {
    LeaderPoint x{p.x_lo[0], p.x_lo[1]};
    FollowerPoint y = eps_point(p, x, Rational(0), x.x2);
    check_point(x, y);
    if (follower_objective_exact(x, y) != half) {
      throw InvariantError("superoptimality_certificate: chain point does not attain 1/2");
    }
  }

  // Random eps-feasible samples: y_1 <= 1/3 keeps the final chain row
  // satisfied (1/3 is below the root of h for every n >= 2), each middle
  // entry relaxes its row by at most eps, and all linear rows hold
  // exactly.
  for (int s = 0; s < samples; ++s) {
    std::vector<Rational> y(static_cast<size_t>(p.dim()));
    y[0] = unit_rational(rng) * Rational(1, 3);
    for (int i = 2; i <= n - 1; ++i) {
      const Rational& prev = y[static_cast<size_t>(i - 2)];
      y[static_cast<size_t>(i - 1)] = max(prev * prev - eps * unit_rational(rng), Rational(0));
    }
    y[static_cast<size_t>(n - 1)] = Rational(1, 2) - y[0];
    LeaderPoint x{p.x_lo[0] + unit_rational(rng) * (p.x_hi[0] - p.x_lo[0]),
                  p.x_lo[1] + unit_rational(rng) * (p.x_hi[1] - p.x_lo[1])};
    Rational t1 = unit_rational(rng) * x.x1;
    Rational t2 = -x.x2 + Rational(2) * unit_rational(rng) * x.x2;
    y[static_cast<size_t>(n)] = t1;
    y[static_cast<size_t>(n + 1)] = t2;
    FollowerPoint fp = FollowerPoint::exact(std::move(y));
    if (!is_eps_feasible(p, x, fp, eps)) {
      throw InvariantError("superoptimality_certificate: sampler produced an infeasible point");
    }
    check_point(x, fp);
  }
  return half;
}

}  // namespace blv

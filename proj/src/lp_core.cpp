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

#include "blv/lp_core.hpp"

#include <algorithm>
#include <set>

#include "blv/errors.hpp"

namespace blv {

LinearProgram LinearProgram::minimize(QVec v, QMat m, QVec f) {
  LinearProgram lp;
  lp.sense = Sense::Min;
  lp.objective = std::move(v);
  lp.constraint_matrix = std::move(m);
  lp.rhs = std::move(f);
  lp.relations.assign(static_cast<size_t>(lp.constraint_matrix.rows()), Relation::Ge);
  return lp;
}

void LinearProgram::validate() const {
  if (constraint_matrix.rows() != rhs.size()) {
    throw ConfigError("LinearProgram: rhs length disagrees with row count");
  }
  if (constraint_matrix.cols() != objective.size()) {
    throw ConfigError("LinearProgram: objective length disagrees with column count");
  }
  if (!relations.empty() &&
      static_cast<Eigen::Index>(relations.size()) != constraint_matrix.rows()) {
    throw ConfigError("LinearProgram: relations length disagrees with row count");
  }
}

bool LinearProgram::is_canonical() const {
  if (sense != Sense::Min) return false;
  for (Relation r : relations) {
    if (r != Relation::Ge) return false;
  }
  return true;
}

LinearProgram LinearProgram::canonical() const {
  validate();
  if (is_canonical()) return *this;
  const int m = num_rows();
  const int n = num_vars();
  int extra = 0;
  for (int i = 0; i < m; ++i) {
    if (!relations.empty() && relations[static_cast<size_t>(i)] == Relation::Eq) ++extra;
  }
  LinearProgram out;
  out.sense = Sense::Min;
  out.objective = sense == Sense::Min ? objective : QVec(-objective);
  out.constraint_matrix = QMat(m + extra, n);
  out.rhs = QVec(m + extra);
  out.relations.assign(static_cast<size_t>(m + extra), Relation::Ge);
  int row = 0;
  for (int i = 0; i < m; ++i) {
    Relation rel = relations.empty() ? Relation::Ge : relations[static_cast<size_t>(i)];
    if (rel == Relation::Le) {
      out.constraint_matrix.row(row) = -constraint_matrix.row(i);
      out.rhs[row] = -rhs[i];
      ++row;
    } else {
      out.constraint_matrix.row(row) = constraint_matrix.row(i);
      out.rhs[row] = rhs[i];
      ++row;
      if (rel == Relation::Eq) {
        out.constraint_matrix.row(row) = -constraint_matrix.row(i);
        out.rhs[row] = -rhs[i];
        ++row;
      }
    }
  }
  return out;
}

namespace {

struct StandardResult {
  LpStatus status = LpStatus::Optimal;
  QVec w;
  Rational value;
  std::vector<int> basis;  // column index of the basic variable per row
  QVec y;                  // equality multipliers
  QVec farkas;             // y with y^T A <= 0, y^T b > 0 when infeasible
  QVec ray;                // w-space ray when unbounded
  long iterations = 0;
};

// Dense-tableau primal simplex with Bland's rule on
//   min c^T w  s.t.  A w = b,  w >= 0.
// Exact rational arithmetic throughout; phase 1 uses one artificial
// column per row, and the artificial block doubles as B^{-1} for reading
// off the equality multipliers.
class StandardSimplex {
 public:
  StandardSimplex(const QMat& a, const QVec& b, const QVec& c)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), cost_(c) {
    row_sign_.assign(static_cast<size_t>(m_), 1);
    tab_ = QMat::Zero(m_, n_ + m_ + 1);
    for (int i = 0; i < m_; ++i) {
      bool flip = b[i].sign() < 0;
      if (flip) row_sign_[static_cast<size_t>(i)] = -1;
      for (int j = 0; j < n_; ++j) tab_(i, j) = flip ? -a(i, j) : a(i, j);
      tab_(i, n_ + i) = Rational(1);
      tab_(i, n_ + m_) = flip ? -b[i] : b[i];
    }
    basis_.resize(static_cast<size_t>(m_));
    for (int i = 0; i < m_; ++i) basis_[static_cast<size_t>(i)] = n_ + i;
  }

  StandardResult run() {
    StandardResult res;
    // Phase 1: minimize the artificial sum.
    QVec phase1_cost = QVec::Zero(n_ + m_);
    for (int j = n_; j < n_ + m_; ++j) phase1_cost[j] = Rational(1);
    reduced_costs(phase1_cost);
    pivot_loop(/*allow_artificial=*/true, nullptr);
    Rational infeas(0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] >= n_) infeas += tab_(i, n_ + m_);
    }
    if (infeas.sign() > 0) {
      res.status = LpStatus::Infeasible;
      res.farkas = QVec(m_);
      for (int j = 0; j < m_; ++j) {
        // cost 1 on the artificial => y_j = 1 - redcost_{n+j}; undo the
        // row-sign normalization to express Farkas for the caller's data.
        res.farkas[j] =
            Rational(row_sign_[static_cast<size_t>(j)]) * (Rational(1) - red_[n_ + j]);
      }
      res.iterations = iterations_;
      return res;
    }
    drive_out_artificials();

    // Phase 2 with the real costs; artificial columns keep cost 0 and are
    // banned from entering, so their reduced costs read off -y.
    QVec phase2_cost = QVec::Zero(n_ + m_);
    for (int j = 0; j < n_; ++j) phase2_cost[j] = cost_[j];
    reduced_costs(phase2_cost);
    int unbounded_col = -1;
    pivot_loop(/*allow_artificial=*/false, &unbounded_col);
    if (unbounded_col >= 0) {
      res.status = LpStatus::Unbounded;
      res.ray = QVec::Zero(n_);
      if (unbounded_col < n_) res.ray[unbounded_col] = Rational(1);
      for (int i = 0; i < m_; ++i) {
        int bi = basis_[static_cast<size_t>(i)];
        if (bi < n_) res.ray[bi] = -tab_(i, unbounded_col);
      }
      res.iterations = iterations_;
      return res;
    }

    res.status = LpStatus::Optimal;
    res.w = QVec::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      int bi = basis_[static_cast<size_t>(i)];
      if (bi < n_) res.w[bi] = tab_(i, n_ + m_);
    }
    res.value = cost_.dot(res.w);
    res.y = QVec(m_);
    for (int j = 0; j < m_; ++j) {
      res.y[j] = Rational(row_sign_[static_cast<size_t>(j)]) * (-red_[n_ + j]);
    }
    res.basis = basis_;
    res.iterations = iterations_;
    return res;
  }

 private:
  void reduced_costs(const QVec& cost) {
    red_ = cost;
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[static_cast<size_t>(i)]];
      if (cb.is_zero()) continue;
      for (int j = 0; j < n_ + m_; ++j) {
        if (!tab_(i, j).is_zero()) red_[j] -= cb * tab_(i, j);
      }
    }
  }

  // Bland: entering = lowest-index negative reduced cost; leaving = the
  // minimum-ratio row, ties broken by the lowest basic variable index.
  void pivot_loop(bool allow_artificial, int* unbounded_col) {
    constexpr long kIterationGuard = 50'000'000;
    for (;;) {
      int enter = -1;
      const int limit = allow_artificial ? n_ + m_ : n_;
      for (int j = 0; j < limit; ++j) {
        if (red_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (tab_(i, enter).sign() <= 0) continue;
        Rational ratio = tab_(i, n_ + m_) / tab_(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        if (unbounded_col != nullptr) {
          *unbounded_col = enter;
          return;
        }
        throw Error("simplex: unexpected unbounded phase");
      }
      pivot(leave, enter);
      if (++iterations_ > kIterationGuard) {
        throw Error("simplex: iteration guard tripped");
      }
    }
  }

  void pivot(int row, int col) {
    const Rational piv = tab_(row, col);
    for (int j = 0; j <= n_ + m_; ++j) tab_(row, j) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_(i, col).is_zero()) continue;
      const Rational f = tab_(i, col);
      for (int j = 0; j <= n_ + m_; ++j) {
        if (!tab_(row, j).is_zero()) tab_(i, j) -= f * tab_(row, j);
      }
    }
    if (!red_[col].is_zero()) {
      const Rational f = red_[col];
      for (int j = 0; j < n_ + m_; ++j) {
        if (!tab_(row, j).is_zero()) red_[j] -= f * tab_(row, j);
      }
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  // Degenerate pivots that replace zero-level artificials by real
  // columns; rows with no real support are inert and stay as they are.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (!tab_(i, j).is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  int m_;
  int n_;
  QVec cost_;
  QMat tab_;
  QVec red_;
  std::vector<int> basis_;
  std::vector<int> row_sign_;
  long iterations_ = 0;
};

StandardResult solve_standard(const QMat& a, const QVec& b, const QVec& c) {
  return StandardSimplex(a, b, c).run();
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpLimits& limits) {
  LinearProgram can = lp.canonical();
  const int m = can.num_rows();
  const int n = can.num_vars();
  if (m > limits.max_rows || n > limits.max_vars) {
    throw LimitError("solve_lp: instance exceeds the size caps");
  }
  if (n == 0) throw ConfigError("solve_lp: no variables");

  // Standard form: w = (x+, x-, s) with [M -M -I] w = f.
  const QMat& mm = can.constraint_matrix;
  QMat a(m, 2 * n + m);
  a.block(0, 0, m, n) = mm;
  a.block(0, n, m, n) = -mm;
  a.block(0, 2 * n, m, m) = -QMat::Identity(m, m);
  QVec c = QVec::Zero(2 * n + m);
  for (int j = 0; j < n; ++j) {
    c[j] = can.objective[j];
    c[n + j] = -can.objective[j];
  }
  StandardResult sr = solve_standard(a, can.rhs, c);

  LpSolution sol;
  sol.status = sr.status;
  sol.iterations = sr.iterations;
  if (sr.status == LpStatus::Infeasible) {
    sol.farkas = sr.farkas;
    return sol;
  }
  if (sr.status == LpStatus::Unbounded) {
    sol.ray = sr.ray.head(n) - sr.ray.segment(n, n);
    return sol;
  }
  sol.x = sr.w.head(n) - sr.w.segment(n, n);
  sol.value = can.objective.dot(sol.x);
  sol.dual = sr.y;
  std::set<int> in_basis(sr.basis.begin(), sr.basis.end());
  for (int i = 0; i < m; ++i) {
    if (in_basis.count(2 * n + i) == 0) sol.basis.push_back(i);
  }
  // Exact certificates, by construction; cheap to re-check.
  for (int i = 0; i < m; ++i) {
    if (mm.row(i).dot(sol.x) < can.rhs[i]) {
      throw Error("solve_lp: internal primal feasibility check failed");
    }
    if (sol.dual[i].sign() < 0) {
      throw Error("solve_lp: internal dual sign check failed");
    }
  }
  QVec residual = mm.transpose() * sol.dual - can.objective;
  for (int j = 0; j < n; ++j) {
    if (!residual[j].is_zero()) {
      throw Error("solve_lp: internal dual equality check failed");
    }
  }
  if (can.rhs.dot(sol.dual) != sol.value) {
    throw Error("solve_lp: internal strong duality check failed");
  }
  return sol;
}

namespace {

struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const {
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
  }
};

}  // namespace

bool next_subset(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[static_cast<size_t>(i)] < m - k + i) {
      ++idx[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

long count_bases(int m, int k, long cap) {
  if (k < 0 || k > m) return 0;
  long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (m - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

DualExtremePoints enumerate_dual_extreme_points(const LinearProgram& lp, long cap) {
  LinearProgram can = lp.canonical();
  const QMat& mm = can.constraint_matrix;
  const QVec& v = can.objective;
  const int m = can.num_rows();
  const int n = can.num_vars();

  const int r = rank_exact(mm);
  // Consistency of M^T z = v: v must lie in the row space of M.
  {
    QMat aug(m + 1, n);
    aug.topRows(m) = mm;
    aug.row(m) = v.transpose();
    if (rank_exact(aug) > r) return DualExtremePoints{};  // dual infeasible
  }

  DualExtremePoints out;
  std::set<QVec, QVecLess> seen;
  if (r == 0) {
    // M = 0 and v = 0: the only extreme point of {z >= 0 : 0 = 0} is 0.
    out.points.push_back(QVec::Zero(m));
    out.bases.emplace_back();
    return out;
  }
  std::vector<int> combo(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) combo[static_cast<size_t>(i)] = i;
  long visited = 0;
  do {
    if (++visited > cap) {
      out.truncated = true;
      break;
    }
    QMat bt(n, r);  // columns of M^T indexed by the candidate basis
    for (int j = 0; j < r; ++j) {
      bt.col(j) = mm.row(combo[static_cast<size_t>(j)]).transpose();
    }
    std::optional<QVec> zb;
    if (r == n) {
      zb = solve_square(bt, v);
    } else {
      std::vector<int> pick = independent_rows(bt);
      if (static_cast<int>(pick.size()) < r) continue;  // dependent basis
      QMat sq(r, r);
      QVec rv(r);
      for (int i = 0; i < r; ++i) {
        sq.row(i) = bt.row(pick[static_cast<size_t>(i)]);
        rv[i] = v[pick[static_cast<size_t>(i)]];
      }
      zb = solve_square(sq, rv);
      if (zb.has_value()) {
        QVec res = bt * *zb - v;
        for (int i = 0; i < n && zb.has_value(); ++i) {
          if (!res[i].is_zero()) zb.reset();  // inconsistent on a dropped row
        }
      }
    }
    if (!zb.has_value()) continue;
    bool nonneg = true;
    for (int i = 0; i < r && nonneg; ++i) nonneg = (*zb)[i].sign() >= 0;
    if (!nonneg) continue;
    QVec z = QVec::Zero(m);
    for (int j = 0; j < r; ++j) z[combo[static_cast<size_t>(j)]] = (*zb)[j];
    if (seen.insert(z).second) {
      out.points.push_back(z);
      out.bases.push_back(combo);
    }
  } while (next_subset(combo, m));
  return out;
}

namespace {

Rational dual_hadamard_kappa(const LinearProgram& can) {
  // ||z_B||_1 bound through Cramer's rule on M_B^T z_B = v.
  return hadamard_solve_bound(can.constraint_matrix, can.objective);
}

}  // namespace

KappaBound kappa_of(const LinearProgram& lp, long cap) {
  LinearProgram can = lp.canonical();
  const int m = can.num_rows();
  const int r = rank_exact(can.constraint_matrix);

  if (count_bases(m, r, cap) <= cap) {
    DualExtremePoints pts = enumerate_dual_extreme_points(can, cap);
    if (pts.truncated) throw Error("kappa_of: unexpected truncation");
    if (pts.points.empty()) {
      throw InvariantError("kappa_of: dual polyhedron is empty");
    }
    KappaBound kb;
    bool first = true;
    for (size_t i = 0; i < pts.points.size(); ++i) {
      Rational norm = norm1(pts.points[i]);
      if (first || norm > kb.kappa) {
        kb.kappa = norm;
        kb.witnessing_basis = pts.bases[i];
        first = false;
      }
    }
    return kb;
  }

  // Too many bases. max ||z||_1 = max e^T z over the dual polyhedron is
  // an LP (z >= 0); when it is bounded its optimum sits at an extreme
  // point, which is exactly kappa.
  const int n = can.num_vars();
  QMat a = can.constraint_matrix.transpose();
  QVec c = QVec::Constant(m, Rational(-1));
  StandardResult sr = solve_standard(a, can.objective, c);
  if (sr.status == LpStatus::Optimal) {
    KappaBound kb;
    kb.kappa = -sr.value;
    for (int i = 0; i < n; ++i) {
      int bi = sr.basis[static_cast<size_t>(i)];
      if (bi < m) kb.witnessing_basis.push_back(bi);
    }
    std::sort(kb.witnessing_basis.begin(), kb.witnessing_basis.end());
    return kb;
  }
  if (sr.status == LpStatus::Infeasible) {
    throw InvariantError("kappa_of: dual polyhedron is empty");
  }
  KappaBound kb;
  kb.kappa = dual_hadamard_kappa(can);
  kb.is_upper_bound_only = true;
  return kb;
}

KappaBound max_basis_solve_inf_norm(const QMat& m, const QVec& v, long cap) {
  const int rows = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());
  if (v.size() != k) throw ConfigError("max_basis_solve_inf_norm: dimension mismatch");
  if (count_bases(rows, k, cap) > cap) {
    KappaBound kb;
    kb.kappa = hadamard_solve_bound(m, v);
    kb.is_upper_bound_only = true;
    return kb;
  }
  KappaBound kb;
  bool found = false;
  std::vector<int> combo(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<size_t>(i)] = i;
  if (rows < k) return kb;  // no bases at all
  do {
    QMat bt(k, k);
    for (int j = 0; j < k; ++j) {
      bt.col(j) = m.row(combo[static_cast<size_t>(j)]).transpose();
    }
    std::optional<QVec> u = solve_square(bt, v);
    if (!u.has_value()) continue;
    Rational norm = norm_inf(*u);
    if (!found || norm > kb.kappa) {
      kb.kappa = norm;
      kb.witnessing_basis = combo;
      found = true;
    }
  } while (next_subset(combo, rows));
  if (!found) throw InvariantError("max_basis_solve_inf_norm: no nonsingular basis");
  return kb;
}

NearOptimalityCheck nearly_optimal_bound_check(const LinearProgram& lp,
                                               const QVec& x_hat, const Rational& eps,
                                               long cap) {
  LinearProgram can = lp.canonical();
  if (x_hat.size() != can.objective.size()) {
    throw ConfigError("nearly_optimal_bound_check: point dimension mismatch");
  }
  if (eps.sign() < 0) throw ConfigError("nearly_optimal_bound_check: eps must be >= 0");
  for (int i = 0; i < can.num_rows(); ++i) {
    if (can.constraint_matrix.row(i).dot(x_hat) < can.rhs[i] - eps) {
      throw HypothesisError(
          "nearly_optimal_bound_check: x_hat is not eps-feasible for row " +
              std::to_string(i),
          "M x_hat >= f - eps e");
    }
  }
  LpSolution sol = solve_lp(can);
  if (sol.status != LpStatus::Optimal) {
    throw InvariantError("nearly_optimal_bound_check: LP is not solvable to optimality");
  }
  NearOptimalityCheck out;
  out.kappa = kappa_of(can, cap);
  out.optimal_value = sol.value;
  Rational lhs = can.objective.dot(x_hat);
  out.slack = lhs - (sol.value - eps * out.kappa.kappa);
  out.holds = out.slack.sign() >= 0;
  return out;
}

}  // namespace blv

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

#include "blv/linlin_stability.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "blv/errors.hpp"

namespace blv {

void LinearBilevelInstance::check_dims() const {
  if (A.rows() != a.size() || C.rows() != b.size() || D.rows() != b.size() ||
      C.cols() != A.cols() || c_x.size() != A.cols() || c_y.size() != D.cols() ||
      d.size() != D.cols()) {
    throw ConfigError("LinearBilevelInstance: inconsistent dimensions");
  }
}

namespace {

QMat stacked_system(const LinearBilevelInstance& inst) {
  const int nx = inst.nx();
  const int ny = inst.ny();
  QMat j = QMat::Zero(inst.m() + inst.l(), nx + ny);
  j.block(0, 0, inst.m(), nx) = inst.A;
  j.block(inst.m(), 0, inst.l(), nx) = inst.C;
  j.block(inst.m(), nx, inst.l(), ny) = inst.D;
  return j;
}

QVec stacked_rhs(const LinearBilevelInstance& inst) {
  QVec g(inst.m() + inst.l());
  g.head(inst.m()) = inst.a;
  g.tail(inst.l()) = inst.b;
  return g;
}

LinearProgram lower_lp(const LinearBilevelInstance& inst, const QVec& x) {
  return LinearProgram::minimize(inst.d, inst.D, inst.b - inst.C * x);
}

// min delta s.t. F x >= g, |x - x_hat|_1 <= delta, as a plain >=-form LP
// over (x, t, delta): t_i -+ x_i >= -+ x_hat_i and delta - sum t >= 0.
LinearProgram l1_projection_lp(const QMat& f, const QVec& g, const QVec& x_hat) {
  const int rows = static_cast<int>(f.rows());
  const int k = static_cast<int>(f.cols());
  QMat m = QMat::Zero(rows + 2 * k + 1, 2 * k + 1);
  QVec rhs = QVec::Zero(rows + 2 * k + 1);
  m.block(0, 0, rows, k) = f;
  rhs.head(rows) = g;
  for (int i = 0; i < k; ++i) {
    m(rows + 2 * i, i) = Rational(-1);
    m(rows + 2 * i, k + i) = Rational(1);
    rhs[rows + 2 * i] = -x_hat[i];
    m(rows + 2 * i + 1, i) = Rational(1);
    m(rows + 2 * i + 1, k + i) = Rational(1);
    rhs[rows + 2 * i + 1] = x_hat[i];
  }
  for (int i = 0; i < k; ++i) m(rows + 2 * k, k + i) = Rational(-1);
  m(rows + 2 * k, 2 * k) = Rational(1);
  QVec v = QVec::Zero(2 * k + 1);
  v[2 * k] = Rational(1);
  return LinearProgram::minimize(std::move(v), std::move(m), std::move(rhs));
}

struct Projection {
  QVec point;
  Rational distance;
  KappaBound kappa;
};

Projection solve_l1_projection(const QMat& f, const QVec& g, const QVec& x_hat,
                               long cap, const char* who) {
  LinearProgram lp = l1_projection_lp(f, g, x_hat);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw InvariantError(std::string(who) + ": recovery target set is empty");
  }
  const int k = static_cast<int>(f.cols());
  Projection out;
  out.point = sol.x.head(k);
  out.distance = sol.x[2 * k];
  if (out.distance != norm1(QVec(out.point - x_hat))) {
    throw Error(std::string(who) + ": projection distance mismatch");
  }
  out.kappa = kappa_of(lp, cap);
  return out;
}

Rational max_abs_row_sum(const QMat& m) { return induced_norm_inf(m); }

}  // namespace

std::vector<std::string> LinearBilevelInstance::violated_assumptions() const {
  check_dims();
  std::vector<std::string> bad;
  const int nx = this->nx();
  const int ny = this->ny();
  QMat j = stacked_system(*this);
  QVec g = stacked_rhs(*this);

  {
    LpSolution probe = solve_lp(LinearProgram::minimize(QVec::Zero(nx + ny), j, g));
    if (probe.status == LpStatus::Infeasible) {
      bad.emplace_back("joint set empty");
      return bad;
    }
  }
  for (int k = 0; k < nx + ny; ++k) {
    for (int s = -1; s <= 1; s += 2) {
      QVec v = QVec::Zero(nx + ny);
      v[k] = Rational(s);
      if (solve_lp(LinearProgram::minimize(v, j, g)).status == LpStatus::Unbounded) {
        bad.emplace_back("joint set unbounded");
        k = nx + ny;
        break;
      }
    }
  }
  std::vector<QVec> probed_x;
  bool upper_bounded = true;
  for (int k = 0; k < nx && upper_bounded; ++k) {
    for (int s = -1; s <= 1; s += 2) {
      QVec v = QVec::Zero(nx);
      v[k] = Rational(s);
      LpSolution sol = solve_lp(LinearProgram::minimize(v, A, a));
      if (sol.status == LpStatus::Unbounded) {
        bad.emplace_back("upper-level set unbounded");
        upper_bounded = false;
        break;
      }
      if (sol.status == LpStatus::Optimal) probed_x.push_back(sol.x);
      if (sol.status == LpStatus::Infeasible) {
        bad.emplace_back("upper-level set empty");
        upper_bounded = false;
        break;
      }
    }
  }
  for (const QVec& x : probed_x) {
    LpSolution sol = solve_lp(lower_lp(*this, x));
    if (sol.status != LpStatus::Optimal) {
      bad.emplace_back("lower level infeasible or unbounded at a probed x");
      break;
    }
  }
  return bad;
}

RecoveryResult recover_upper(const LinearBilevelInstance& inst, const QVec& x_hat,
                             const Rational& eps, long cap) {
  inst.check_dims();
  if (x_hat.size() != inst.nx()) throw ConfigError("recover_upper: x dimension");
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.A.row(i).dot(x_hat) < inst.a[i] - eps) {
      throw HypothesisError("recover_upper: A x_hat >= a - eps e fails at row " +
                                std::to_string(i),
                            "A x_hat >= a - eps e");
    }
  }
  Projection p = solve_l1_projection(inst.A, inst.a, x_hat, cap, "recover_upper");
  RecoveryResult out{std::move(p.point), std::move(p.distance), std::move(p.kappa),
                     false};
  out.bound_holds = out.distance <= eps * out.kappa.kappa;
  return out;
}

JointRecovery recover_joint(const LinearBilevelInstance& inst, const QVec& x_hat,
                            const QVec& y_hat, const Rational& eps, long cap) {
  inst.check_dims();
  const int nx = inst.nx();
  const int ny = inst.ny();
  if (x_hat.size() != nx || y_hat.size() != ny) {
    throw ConfigError("recover_joint: point dimensions");
  }
  QVec w(nx + ny);
  w.head(nx) = x_hat;
  w.tail(ny) = y_hat;
  QMat j = stacked_system(inst);
  QVec g = stacked_rhs(inst);
  for (int i = 0; i < j.rows(); ++i) {
    if (j.row(i).dot(w) < g[i] - eps) {
      throw HypothesisError("recover_joint: stacked feasibility fails at row " +
                                std::to_string(i),
                            "[A 0; C D](x;y) >= (a;b) - eps e");
    }
  }
  Projection p = solve_l1_projection(j, g, w, cap, "recover_joint");
  JointRecovery out;
  out.x_star = p.point.head(nx);
  out.y_prime = p.point.tail(ny);
  out.distance = p.distance;
  out.kappa6 = p.kappa;
  out.bound_holds = out.distance <= eps * out.kappa6.kappa;
  return out;
}

namespace {

// The lower-level dual as a >=-form primal: min -(b - Cx)^T z over
// D^T z = d (row pair) and z >= 0. kappa_of this LP is the Lemma-1
// constant for dual-side superoptimality.
LinearProgram dual_as_primal_lp(const LinearBilevelInstance& inst, const QVec& x) {
  const int ny = inst.ny();
  const int l = inst.l();
  QMat m = QMat::Zero(2 * ny + l, l);
  QVec f = QVec::Zero(2 * ny + l);
  m.block(0, 0, ny, l) = inst.D.transpose();
  f.head(ny) = inst.d;
  m.block(ny, 0, ny, l) = -inst.D.transpose();
  f.segment(ny, ny) = -inst.d;
  m.block(2 * ny, 0, l, l) = QMat::Identity(l, l);
  QVec v = -(inst.b - inst.C * x);
  return LinearProgram::minimize(std::move(v), std::move(m), std::move(f));
}

}  // namespace

LowerRecovery recover_lower(const LinearBilevelInstance& inst, const QVec& x,
                            const QVec& y_hat, const QVec& z_hat,
                            const Rational& eps_effective, long cap) {
  inst.check_dims();
  const int ny = inst.ny();
  const int l = inst.l();
  if (x.size() != inst.nx() || y_hat.size() != ny || z_hat.size() != l) {
    throw ConfigError("recover_lower: dimensions");
  }
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.A.row(i).dot(x) < inst.a[i]) {
      throw HypothesisError("recover_lower: x is not exactly upper-level feasible",
                            "A x >= a");
    }
  }
  const QVec rhs = inst.b - inst.C * x;
  for (int i = 0; i < l; ++i) {
    if (inst.D.row(i).dot(y_hat) < rhs[i] - eps_effective) {
      throw HypothesisError("recover_lower: (i) fails at lower row " + std::to_string(i),
                            "D y_hat >= b - C x - eps e");
    }
  }
  QVec dres = inst.D.transpose() * z_hat - inst.d;
  if (norm_inf(dres) > eps_effective) {
    throw HypothesisError("recover_lower: (ii) dual residual exceeds tolerance",
                          "||D^T z_hat - d||_inf <= eps");
  }
  for (int i = 0; i < l; ++i) {
    if (z_hat[i] < -eps_effective) {
      throw HypothesisError("recover_lower: (ii) dual negativity exceeds tolerance",
                            "z_hat >= -eps e");
    }
  }
  if (inst.d.dot(y_hat) - rhs.dot(z_hat) > eps_effective) {
    throw HypothesisError("recover_lower: (iii) duality gap exceeds tolerance",
                          "d^T y_hat - (b - C x)^T z_hat <= eps");
  }

  LpSolution lower = solve_lp(lower_lp(inst, x));
  if (lower.status != LpStatus::Optimal) {
    throw InvariantError("recover_lower: lower level not solvable at x");
  }
  const Rational v_star = lower.value;

  // Projection problem: min delta over ||y - y_hat||_1 <= delta,
  // D y >= b - C x, d^T y <= v*.
  QMat f(l + 1, ny);
  QVec g(l + 1);
  f.topRows(l) = inst.D;
  g.head(l) = rhs;
  f.row(l) = -inst.d.transpose();
  g[l] = -v_star;
  Projection p = solve_l1_projection(f, g, y_hat, cap, "recover_lower");

  LowerRecovery out;
  out.y_star = std::move(p.point);
  out.lower_value = v_star;
  out.distance = std::move(p.distance);
  out.kappa2_proj = std::move(p.kappa);
  if (inst.d.dot(out.y_star) != v_star) {
    throw Error("recover_lower: recovered point is not exactly optimal");
  }
  out.kappa1_dual = kappa_of(dual_as_primal_lp(inst, x), cap);
  out.kappa = (out.kappa1_dual.kappa + Rational(1)) * out.kappa2_proj.kappa;
  out.bound_holds = out.distance <= eps_effective * out.kappa;
  return out;
}

std::string check_triple_hypotheses(const LinearBilevelInstance& inst,
                                    const NearFeasibleTriple& t, long cap) {
  inst.check_dims();
  const int nx = inst.nx();
  const int ny = inst.ny();
  const int l = inst.l();
  if (t.x_hat.size() != nx || t.y_hat.size() != ny || t.z_hat.size() != l) {
    return "dimension mismatch";
  }
  if (t.eps.sign() < 0) return "eps must be >= 0";
  const Rational& eps = t.eps;
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.A.row(i).dot(t.x_hat) < inst.a[i] - eps) return "(i) A x_hat >= a - eps e";
  }
  QVec rhs = inst.b - inst.C * t.x_hat;
  for (int i = 0; i < l; ++i) {
    if (inst.D.row(i).dot(t.y_hat) < rhs[i] - eps) {
      return "(i) C x_hat + D y_hat >= b - eps e";
    }
  }
  if (norm_inf(QVec(inst.D.transpose() * t.z_hat - inst.d)) > eps) {
    return "(ii) ||D^T z_hat - d||_inf <= eps";
  }
  for (int i = 0; i < l; ++i) {
    if (t.z_hat[i] < -eps) return "(ii) z_hat >= -eps e";
  }
  if (inst.d.dot(t.y_hat) - rhs.dot(t.z_hat) > eps) {
    return "(iii) d^T y_hat - (b - C x_hat)^T z_hat <= eps";
  }
  // (iv): declared basis, exact basic dual, componentwise closeness.
  if (static_cast<int>(t.dual_basis.size()) != ny) {
    return "(iv) declared dual basis must have n_y rows";
  }
  QMat bt(ny, ny);
  for (int j = 0; j < ny; ++j) {
    int row = t.dual_basis[static_cast<size_t>(j)];
    if (row < 0 || row >= l) return "(iv) declared basis row out of range";
    bt.col(j) = inst.D.row(row).transpose();
  }
  std::optional<QVec> zb = solve_square(bt, inst.d);
  if (!zb.has_value()) return "(iv) declared basis matrix is singular";
  Rational kappa1 = kappa_of(LinearProgram::minimize(inst.d, inst.D, QVec::Zero(l)), cap)
                        .kappa;
  std::set<int> in_basis(t.dual_basis.begin(), t.dual_basis.end());
  for (int j = 0; j < ny; ++j) {
    if (abs(t.z_hat[t.dual_basis[static_cast<size_t>(j)]] - (*zb)[j]) > eps * kappa1) {
      return "(iv) ||z_hat_B - D_B^{-T} d||_inf <= eps kappa1";
    }
  }
  for (int i = 0; i < l; ++i) {
    if (in_basis.count(i) == 0 && abs(t.z_hat[i]) > eps) {
      return "(iv) ||z_hat_N||_inf <= eps";
    }
  }
  return "";
}

StabilityReport theorem1_check(const LinearBilevelInstance& inst,
                               const NearFeasibleTriple& triple, long cap) {
  std::string failed = check_triple_hypotheses(inst, triple, cap);
  if (!failed.empty()) {
    throw HypothesisError("theorem1_check: hypothesis " + failed + " fails", failed);
  }
  const Rational& eps = triple.eps;

  JointRecovery joint = recover_joint(inst, triple.x_hat, triple.y_hat, eps, cap);
  if (!joint.bound_holds) {
    throw InvariantError("theorem1_check: joint recovery bound failed");
  }

  KappaBound kappa1 =
      kappa_of(LinearProgram::minimize(inst.d, inst.D, QVec::Zero(inst.l())), cap);
  KappaBound kappa7 = max_basis_solve_inf_norm(inst.D, inst.d, cap);
  const Rational norm_c1 = induced_norm1(inst.C);
  const Rational norm_d_inf = norm_inf(inst.d);

  const Rational kappa6 = joint.kappa6.kappa;
  Rational kappa8 = kappa6 * (norm_d_inf + norm_c1 * kappa7.kappa) + Rational(1);
  Rational kappa9 = kappa6 * norm_c1 * (kappa1.kappa + Rational(1));
  Rational eps_eff = eps * (kappa8 + eps * kappa9);

  LowerRecovery low =
      recover_lower(inst, joint.x_star, joint.y_prime, triple.z_hat, eps_eff, cap);
  if (!low.bound_holds) {
    throw InvariantError("theorem1_check: lower recovery bound failed");
  }
  const Rational kappa10 = low.kappa;

  StabilityReport rep;
  rep.x_star = joint.x_star;
  rep.y_star = low.y_star;
  rep.eps = eps;
  rep.dist_x = norm1(QVec(rep.x_star - triple.x_hat));
  rep.dist_y = norm1(QVec(rep.y_star - triple.y_hat));
  rep.dist_total = rep.dist_x + rep.dist_y;
  Rational obj_star = inst.c_x.dot(rep.x_star) + inst.c_y.dot(rep.y_star);
  Rational obj_hat = inst.c_x.dot(triple.x_hat) + inst.c_y.dot(triple.y_hat);
  rep.obj_diff = abs(obj_star - obj_hat);

  Rational kappa2 = kappa6 + kappa8 * kappa10;
  Rational kappa3 = kappa9 * kappa10;
  Rational cx_inf = norm_inf(inst.c_x);
  Rational cy_inf = norm_inf(inst.c_y);
  Rational kappa4 = kappa6 * (cx_inf + cy_inf) + kappa8 * kappa10 * cy_inf;
  Rational kappa5 = kappa9 * kappa10 * cy_inf;

  const bool f6 = joint.kappa6.is_upper_bound_only;
  const bool f1 = kappa1.is_upper_bound_only;
  const bool f7 = kappa7.is_upper_bound_only;
  const bool f10 =
      low.kappa1_dual.is_upper_bound_only || low.kappa2_proj.is_upper_bound_only;
  const bool f8 = f6 || f7;
  const bool f9 = f6 || f1;
  rep.kappa_estimates = {
      {"kappa1", {kappa1.kappa, f1}},
      {"kappa2", {kappa2, f8 || f10 || f6}},
      {"kappa3", {kappa3, f9 || f10}},
      {"kappa4", {kappa4, f6 || f8 || f10}},
      {"kappa5", {kappa5, f9 || f10}},
      {"kappa6", {kappa6, f6}},
      {"kappa7", {kappa7.kappa, f7}},
      {"kappa8", {kappa8, f8}},
      {"kappa9", {kappa9, f9}},
      {"kappa10", {kappa10, f10}},
  };
  rep.dist_bound = eps * kappa2 + eps * eps * kappa3;
  rep.obj_bound = eps * kappa4 + eps * eps * kappa5;

  if (rep.dist_total > rep.dist_bound || rep.obj_diff > rep.obj_bound) {
    throw InvariantError("theorem1_check: computed bounds violated");
  }
  // Recovered pair must be exactly bilevel-feasible.
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.A.row(i).dot(rep.x_star) < inst.a[i]) {
      throw InvariantError("theorem1_check: recovered x not upper-level feasible");
    }
  }
  QVec rhs = inst.b - inst.C * rep.x_star;
  for (int i = 0; i < inst.l(); ++i) {
    if (inst.D.row(i).dot(rep.y_star) < rhs[i]) {
      throw InvariantError("theorem1_check: recovered y not lower-level feasible");
    }
  }
  if (inst.d.dot(rep.y_star) != low.lower_value) {
    throw InvariantError("theorem1_check: recovered y not lower-level optimal");
  }
  return rep;
}

ExactBilevelPoint solve_linear_bilevel_exact(const LinearBilevelInstance& inst,
                                             long cap) {
  inst.check_dims();
  if (inst.nx() > 6 || inst.ny() > 6 || inst.m() > 12 || inst.l() > 12) {
    throw LimitError(
        "solve_linear_bilevel_exact: caps are n_x, n_y <= 6 and m, l <= 12");
  }
  std::vector<std::string> bad = inst.violated_assumptions();
  if (!bad.empty()) {
    std::string msg = "solve_linear_bilevel_exact: standing assumptions violated:";
    for (const auto& s : bad) msg += " [" + s + "]";
    throw InvariantError(msg);
  }
  const int nx = inst.nx();
  const int ny = inst.ny();
  const int dim = nx + ny;
  QMat j = stacked_system(inst);
  QVec g = stacked_rhs(inst);
  const int rows = static_cast<int>(j.rows());
  if (count_bases(rows, dim, cap) > cap) {
    throw LimitError("solve_linear_bilevel_exact: too many joint bases to enumerate");
  }

  // Optimistic optimum sits at a vertex of the joint polyhedron that is
  // lower-level optimal for its own x.
  bool found = false;
  ExactBilevelPoint best;
  std::vector<int> combo(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) combo[static_cast<size_t>(i)] = i;
  struct VecLess {
    bool operator()(const QVec& p, const QVec& q) const {
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < q[i]) return true;
        if (q[i] < p[i]) return false;
      }
      return false;
    }
  };
  std::set<QVec, VecLess> seen;
  do {
    QMat bmat(dim, dim);
    QVec brhs(dim);
    for (int i = 0; i < dim; ++i) {
      bmat.row(i) = j.row(combo[static_cast<size_t>(i)]);
      brhs[i] = g[combo[static_cast<size_t>(i)]];
    }
    std::optional<QVec> w = solve_square(bmat, brhs);
    if (!w.has_value()) continue;
    bool feasible = true;
    for (int i = 0; i < rows && feasible; ++i) {
      feasible = j.row(i).dot(*w) >= g[i];
    }
    if (!feasible) continue;
    if (!seen.insert(*w).second) continue;
    QVec x = w->head(nx);
    QVec y = w->tail(ny);
    LpSolution lower = solve_lp(lower_lp(inst, x));
    if (lower.status != LpStatus::Optimal) {
      throw InvariantError("solve_linear_bilevel_exact: lower level unsolvable at a vertex");
    }
    if (inst.d.dot(y) != lower.value) continue;  // not bilevel-feasible
    Rational value = inst.c_x.dot(x) + inst.c_y.dot(y);
    if (!found || value < best.value) {
      found = true;
      best.x = std::move(x);
      best.y = std::move(y);
      best.value = std::move(value);
    }
  } while (next_subset(combo, rows));
  if (!found) {
    throw InvariantError("solve_linear_bilevel_exact: no bilevel-feasible vertex");
  }

  // Optimal dual vertex of the lower level at x*, with its basis: the
  // declared basis for Theorem-1 condition (iv).
  if (rank_exact(inst.D) != ny) {
    throw InvariantError(
        "solve_linear_bilevel_exact: D must have full column rank for dual basis "
        "certificates");
  }
  LinearProgram lower = lower_lp(inst, best.x);
  LpSolution lsol = solve_lp(lower);
  DualExtremePoints duals = enumerate_dual_extreme_points(lower, cap);
  if (duals.truncated) {
    throw LimitError("solve_linear_bilevel_exact: too many dual bases to enumerate");
  }
  const QVec lower_rhs = inst.b - inst.C * best.x;
  bool have_dual = false;
  for (size_t i = 0; i < duals.points.size(); ++i) {
    if (lower_rhs.dot(duals.points[i]) == lsol.value) {
      best.z = duals.points[i];
      best.dual_basis = duals.bases[i];
      have_dual = true;
      break;
    }
  }
  if (!have_dual) {
    throw InvariantError("solve_linear_bilevel_exact: no optimal dual vertex found");
  }
  return best;
}

NearFeasibleTriple generate_perturbed_triple(const LinearBilevelInstance& inst,
                                             const Rational& eps, std::uint64_t seed) {
  if (eps.sign() < 0) throw ConfigError("generate_perturbed_triple: eps must be >= 0");
  ExactBilevelPoint exact = solve_linear_bilevel_exact(inst);

  NearFeasibleTriple t;
  t.eps = eps;
  t.dual_basis = exact.dual_basis;
  if (eps.is_zero()) {
    t.x_hat = exact.x;
    t.y_hat = exact.y;
    t.z_hat = exact.z;
    return t;
  }

  const int nx = inst.nx();
  const int ny = inst.ny();
  const int l = inst.l();
  Rational kappa1 =
      kappa_of(LinearProgram::minimize(inst.d, inst.D, QVec::Zero(l))).kappa;

  // Componentwise noise directions in [-1, 1], drawn once; the magnitude
  // shrinks until every hypothesis verifies exactly.
  constexpr long kDen = 1L << 20;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-kDen, kDen);
  auto draw = [&](int k) {
    QVec v(k);
    for (int i = 0; i < k; ++i) v[i] = Rational(dist(rng), kDen);
    return v;
  };
  QVec dx = draw(nx);
  QVec dy = draw(ny);
  QVec dz = draw(l);

  Rational row_norm = max(Rational(1), max(max_abs_row_sum(inst.A),
                                           max(max_abs_row_sum(inst.C),
                                               max_abs_row_sum(inst.D))));
  Rational col_norm = max(Rational(1), max_abs_row_sum(QMat(inst.D.transpose())));
  Rational s_xy = eps / (Rational(2) * row_norm);
  Rational s_z = eps * min(Rational(1), kappa1) / col_norm;
  Rational scale = min(s_xy, s_z);

  for (int attempt = 0; attempt < 64; ++attempt) {
    t.x_hat = exact.x + scale * dx;
    t.y_hat = exact.y + scale * dy;
    t.z_hat = exact.z + scale * dz;
    if (check_triple_hypotheses(inst, t).empty()) return t;
    scale /= Rational(2);
  }
  throw Error("generate_perturbed_triple: could not satisfy hypotheses");
}

}  // namespace blv

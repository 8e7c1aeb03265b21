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

#include "blv/exact_linalg.hpp"

#include <utility>

#include "blv/errors.hpp"

namespace blv {

Rational norm1(const QVec& v) {
  Rational s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v[i]);
  return s;
}

Rational norm_inf(const QVec& v) {
  Rational s(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) s = max(s, abs(v[i]));
  return s;
}

Rational induced_norm1(const QMat& m) {
  Rational best(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Rational s(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += abs(m(i, j));
    best = max(best, s);
  }
  return best;
}

Rational induced_norm_inf(const QMat& m) {
  Rational best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Rational s(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += abs(m(i, j));
    best = max(best, s);
  }
  return best;
}

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

// Clears denominators row-wise; returns the per-row scale factors.
// Scaling rows leaves the solution set of [A|b] unchanged and scales the
// determinant by the product of the factors.
std::vector<mpz_class> integerize_rows(const QMat& a, const QVec* b, ZMat& out) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols() + (b != nullptr ? 1 : 0);
  out.assign(static_cast<size_t>(rows), std::vector<mpz_class>(static_cast<size_t>(cols)));
  std::vector<mpz_class> scales(static_cast<size_t>(rows), mpz_class(1));
  for (Eigen::Index i = 0; i < rows; ++i) {
    mpz_class l(1);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).denominator().get_mpz_t());
    }
    if (b != nullptr) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*b)[i].denominator().get_mpz_t());
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      mpz_class q = l / a(i, j).denominator();
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j).numerator() * q;
    }
    if (b != nullptr) {
      mpz_class q = l / (*b)[i].denominator();
      out[static_cast<size_t>(i)][static_cast<size_t>(a.cols())] = (*b)[i].numerator() * q;
    }
    scales[static_cast<size_t>(i)] = l;
  }
  return scales;
}

// Fraction-free forward elimination (Bareiss). Eliminates the first
// `steps` columns using row pivoting; returns false when a pivot cannot
// be found (singular leading block). On success m is upper triangular in
// the first `steps` columns and sign carries the row-swap parity.
bool bareiss_forward(ZMat& m, int steps, int& sign) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  sign = 1;
  mpz_class prev(1);
  for (int k = 0; k < steps; ++k) {
    int pivot = -1;
    for (int r = k; r < rows; ++r) {
      if (m[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    if (pivot != k) {
      std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(k)]);
      sign = -sign;
    }
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j) {
        mpz_class t = m[static_cast<size_t>(k)][static_cast<size_t>(k)] *
                          m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                      m[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                          m[static_cast<size_t>(k)][static_cast<size_t>(j)];
        mpz_divexact(m[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpz_t(),
                     t.get_mpz_t(), prev.get_mpz_t());
      }
      m[static_cast<size_t>(i)][static_cast<size_t>(k)] = 0;
    }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return true;
}

}  // namespace

Rational det_exact(const QMat& a) {
  if (a.rows() != a.cols()) throw Error("det_exact: matrix not square");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Rational(1);
  ZMat m;
  std::vector<mpz_class> scales = integerize_rows(a, nullptr, m);
  int sign = 1;
  if (!bareiss_forward(m, n - 1, sign)) return Rational(0);
  mpz_class det_int = m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
  if (sign < 0) det_int = -det_int;
  mpz_class denom(1);
  for (const mpz_class& s : scales) denom *= s;
  return Rational(det_int, denom);
}

std::optional<QVec> solve_square(const QMat& a, const QVec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error("solve_square: dimension mismatch");
  }
  const int n = static_cast<int>(a.rows());
  if (n == 0) return QVec(0);
  ZMat m;
  integerize_rows(a, &b, m);
  int sign = 1;
  if (!bareiss_forward(m, n - 1, sign)) return std::nullopt;
  if (m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] == 0) return std::nullopt;
  // Back substitution over the integer triangle, carried out in rationals.
  QVec x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational rhs(mpz_class(m[static_cast<size_t>(i)][static_cast<size_t>(n)]), mpz_class(1));
    for (int j = i + 1; j < n; ++j) {
      rhs -= Rational(mpz_class(m[static_cast<size_t>(i)][static_cast<size_t>(j)]),
                      mpz_class(1)) *
             x[j];
    }
    Rational diag(mpz_class(m[static_cast<size_t>(i)][static_cast<size_t>(i)]), mpz_class(1));
    if (diag.is_zero()) return std::nullopt;
    x[i] = rhs / diag;
  }
  return x;
}

std::optional<QVec> cramer_solve(const QMat& a, const QVec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error("cramer_solve: dimension mismatch");
  }
  Rational d = det_exact(a);
  if (d.is_zero()) return std::nullopt;
  const Eigen::Index n = a.rows();
  QVec x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    QMat ai = a;
    ai.col(i) = b;
    x[i] = det_exact(ai) / d;
  }
  return x;
}

int rank_exact(const QMat& a) {
  return static_cast<int>(independent_rows(a).size());
}

std::vector<int> independent_rows(const QMat& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  ZMat m;
  integerize_rows(a, nullptr, m);
  std::vector<int> row_of(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) row_of[static_cast<size_t>(i)] = i;
  std::vector<int> picked;
  mpz_class prev(1);
  int k = 0;
  for (int c = 0; c < cols && k < rows; ++c) {
    int pivot = -1;
    for (int r = k; r < rows; ++r) {
      if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != k) {
      std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(k)]);
      std::swap(row_of[static_cast<size_t>(pivot)], row_of[static_cast<size_t>(k)]);
    }
    for (int i = k + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        mpz_class t = m[static_cast<size_t>(k)][static_cast<size_t>(c)] *
                          m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                      m[static_cast<size_t>(i)][static_cast<size_t>(c)] *
                          m[static_cast<size_t>(k)][static_cast<size_t>(j)];
        mpz_divexact(m[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpz_t(),
                     t.get_mpz_t(), prev.get_mpz_t());
      }
      m[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
    }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(c)];
    picked.push_back(row_of[static_cast<size_t>(k)]);
    ++k;
  }
  return picked;
}

namespace {

// ceil(sqrt(x)) for nonnegative integers.
mpz_class ceil_sqrt(const mpz_class& x) {
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
  if (s * s < x) s += 1;
  return s;
}

}  // namespace

Rational hadamard_solve_bound(const QMat& m, const QVec& v) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index n = m.cols();
  if (v.size() != n) throw Error("hadamard_solve_bound: dimension mismatch");
  if (rows == 0 || n == 0) return Rational(0);
  // Row-scaled integer rows of M and the scaled v (Cramer data).
  mpz_class g(1), lmax(1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    mpz_class l(1);
    for (Eigen::Index j = 0; j < n; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    }
    mpz_class ss(0);
    for (Eigen::Index j = 0; j < n; ++j) {
      mpz_class e = m(i, j).numerator() * (l / m(i, j).denominator());
      ss += e * e;
    }
    mpz_class rn = ceil_sqrt(ss);
    if (rn > g) g = rn;
    if (l > lmax) lmax = l;
  }
  mpz_class lv(1);
  for (Eigen::Index j = 0; j < n; ++j) {
    mpz_lcm(lv.get_mpz_t(), lv.get_mpz_t(), v[j].denominator().get_mpz_t());
  }
  mpz_class sv(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    mpz_class e = v[j].numerator() * (lv / v[j].denominator());
    sv += e * e;
  }
  mpz_class hv = ceil_sqrt(sv);
  if (hv == 0) hv = 1;
  // |z_b| <= L_b * G^(n-1) * ||v'||_2 / (Lv * |det|) with |det| >= 1.
  mpz_class gp;
  mpz_pow_ui(gp.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(n - 1));
  mpz_class num = mpz_class(n) * lmax * gp * hv;
  return Rational(num, lv);
}

}  // namespace blv

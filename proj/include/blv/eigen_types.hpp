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

#ifndef BLV_EIGEN_TYPES_HPP
#define BLV_EIGEN_TYPES_HPP

#include <Eigen/Core>

#include "blv/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<blv::Rational> : GenericNumTraits<blv::Rational> {
  typedef blv::Rational Real;
  typedef blv::Rational NonInteger;
  typedef blv::Rational Nested;
  typedef blv::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
  static inline Real epsilon() { return blv::Rational(0); }
  static inline Real dummy_precision() { return blv::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace blv {

/// Dense storage templated on the scalar; Rational is the workhorse.
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QVec = Vec<Rational>;
using QMat = Mat<Rational>;

/// 1-norm of a vector (sum of absolute values), exact.
Rational norm1(const QVec& v);
/// Infinity norm of a vector (max absolute value), exact.
Rational norm_inf(const QVec& v);
/// Induced 1-norm of a matrix (max column absolute sum), exact.
Rational induced_norm1(const QMat& m);
/// Max row absolute sum, exact (the induced infinity norm).
Rational induced_norm_inf(const QMat& m);

}  // namespace blv

#endif  // BLV_EIGEN_TYPES_HPP

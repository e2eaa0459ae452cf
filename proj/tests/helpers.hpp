// Copyright 2026 The qsuff Authors.
//
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

#ifndef QSUFF_TESTS_HELPERS_HPP_
#define QSUFF_TESTS_HELPERS_HPP_

#include <initializer_list>
#include <vector>

#include "qsuff/qsuff.hpp"

namespace testing_support {

using qsuff::Complex;
using qsuff::ComplexMatrix;
using qsuff::DensityMatrix;
using qsuff::Index;
using qsuff::RealVector;

inline ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index k = 0;
  for (double x : values) v(k++) = x;
  return v.cast<Complex>().asDiagonal();
}

inline DensityMatrix diag_state(std::initializer_list<double> values) { return DensityMatrix(diag(values)); }

inline DensityMatrix pure_state(const qsuff::ComplexVector& psi) {
  return DensityMatrix(psi * psi.adjoint() / psi.squaredNorm());
}

inline qsuff::ComplexVector basis_vector(Index dim, Index k) {
  qsuff::ComplexVector e = qsuff::ComplexVector::Zero(dim);
  e(k) = 1.0;
  return e;
}

/// sigma = I/2, rho = diag(1/4, 3/4) pair used throughout: rho first.
inline DensityMatrix half_identity() { return diag_state({0.5, 0.5}); }
inline DensityMatrix quarter_state() { return diag_state({0.25, 0.75}); }

inline constexpr double kLn43 = 0.28768207245178085;
inline constexpr double kHalfLn43 = 0.14384103622589042;
inline constexpr double kSqrt43 = 1.1547005383792515;
inline constexpr double kLog2of43 = 0.41503749927884376;
inline constexpr double kLn2 = 0.6931471805599453;

}  // namespace testing_support

#endif  // QSUFF_TESTS_HELPERS_HPP_

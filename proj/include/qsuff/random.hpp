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

// Reproducible random matrices.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform doubles take the top 53 bits of one draw and normal
// deviates come from Box-Muller on two uniforms, so a given seed produces the
// same matrices with every conforming standard library (std::normal_distribution
// is implementation-defined and is deliberately not used).

#ifndef QSUFF_RANDOM_HPP_
#define QSUFF_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qsuff/linalg.hpp"

namespace qsuff {

/// SplitMix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Entries i.i.d. (N(0,1) + i N(0,1)) / sqrt(2), filled row-major.
inline ComplexMatrix complex_gaussian(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  const double s = std::sqrt(0.5);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(s * re, s * im);
    }
  }
  return g;
}

/// Haar-distributed isometry (rows >= cols) from the QR factorization of a
/// complex Gaussian matrix, with the phases of diag(R) absorbed into Q.
inline ComplexMatrix haar_isometry(Index rows, Index cols, Rng& rng) {
  if (cols > rows) throw StructuralError("haar_isometry: more columns than rows");
  const ComplexMatrix g = complex_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index c = 0; c < cols; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

inline ComplexMatrix haar_unitary(Index dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

/// Random Hermitian matrix with Gaussian entries (GUE-like, unnormalized).
inline ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  const ComplexMatrix g = complex_gaussian(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace qsuff

#endif  // QSUFF_RANDOM_HPP_

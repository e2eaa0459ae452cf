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

// Seeded generators for channels with a prescribed sufficiency structure.

#ifndef QSUFF_INSTANCES_HPP_
#define QSUFF_INSTANCES_HPP_

#include <cstdint>
#include <vector>

#include "qsuff/linalg.hpp"
#include "qsuff/quantum.hpp"
#include "qsuff/random.hpp"

namespace qsuff {

struct BlockShape {
  Index d_left = 1;
  Index d_right = 1;
};

struct StructuredInstance {
  QuantumChannel channel;
  DensityMatrix sigma;
  ComplexMatrix unitary;  // U0: H -> (+)_n H_n^L (x) H_n^R
  std::vector<BlockShape> shapes;
};

/// sigma = U0* ((+)_n A_n (x) s_n) U0 and Phi(X) = W [(+)_n (id_L (x) Psi_n)(P_n U0 X U0* P_n*)] W*,
/// where Psi_n are random channels on the right factors and W is a random
/// output unitary. Cross-block coherences are discarded by Phi.
inline StructuredInstance structured_instance(const std::vector<BlockShape>& shapes, std::uint64_t seed,
                                              Index env_dim = 2) {
  if (shapes.empty()) throw StructuralError("structured_instance: no blocks");
  Rng rng(seed);
  Index dim = 0;
  for (const auto& s : shapes) {
    if (s.d_left < 1 || s.d_right < 1) throw StructuralError("structured_instance: block dimensions must be positive");
    dim += s.d_left * s.d_right;
  }
  const ComplexMatrix u0 = haar_unitary(dim, rng);
  const ComplexMatrix w = haar_unitary(dim, rng);

  std::vector<ComplexMatrix> kraus;
  ComplexMatrix sigma_blocks = ComplexMatrix::Zero(dim, dim);
  Index offset = 0;
  for (std::size_t n = 0; n < shapes.size(); ++n) {
    const Index dl = shapes[n].d_left;
    const Index dr = shapes[n].d_right;
    const Index width = dl * dr;
    const QuantumChannel psi = random_channel(dr, dr, env_dim, derive_seed(seed, 2 * n + 1));
    for (const auto& k : psi.kraus()) {
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      m.block(offset, offset, width, width) = tensor(ComplexMatrix::Identity(dl, dl), k);
      kraus.push_back(w * m * u0);
    }
    const ComplexMatrix g = complex_gaussian(dl, dl, rng);
    ComplexMatrix a = g * g.adjoint() + 0.1 * ComplexMatrix::Identity(dl, dl);
    a *= (0.5 + rng.uniform()) / a.trace().real();
    const DensityMatrix s = random_state(dr, dr, derive_seed(seed, 2 * n + 2));
    sigma_blocks.block(offset, offset, width, width) = tensor(a, s.matrix());
    offset += width;
  }
  const ComplexMatrix sigma = u0.adjoint() * sigma_blocks * u0;
  return {QuantumChannel(dim, dim, std::move(kraus)), DensityMatrix::normalized(0.5 * (sigma + sigma.adjoint())), u0,
          shapes};
}

/// Random block shapes with sum of d_left * d_right equal to `dim`.
inline std::vector<BlockShape> random_shapes(Index dim, Rng& rng) {
  std::vector<BlockShape> out;
  Index remaining = dim;
  while (remaining > 0) {
    const Index width = rng.integer(1, remaining);
    std::vector<Index> divisors;
    for (Index r = 1; r <= width; ++r) {
      if (width % r == 0) divisors.push_back(r);
    }
    const Index dr = divisors[static_cast<std::size_t>(rng.integer(0, static_cast<Index>(divisors.size()) - 1))];
    out.push_back({width / dr, dr});
    remaining -= width;
  }
  return out;
}

}  // namespace qsuff

#endif  // QSUFF_INSTANCES_HPP_

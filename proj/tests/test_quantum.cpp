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

#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace qsuff;
using testing_support::diag;
using testing_support::diag_state;

TEST(DensityMatrix, AcceptsValidStates) {
  EXPECT_NO_THROW(diag_state({0.25, 0.75}));
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(5));
  EXPECT_NEAR(DensityMatrix::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(DensityMatrix, RejectsInvalidStates) {
  EXPECT_THROW(DensityMatrix(diag({0.5, 0.6})), ValidationError);
  EXPECT_THROW(DensityMatrix(diag({1.2, -0.2})), ValidationError);
  ComplexMatrix m = diag({0.5, 0.5});
  m(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix{m}, ValidationError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Zero(2, 3)), StructuralError);
  EXPECT_THROW(DensityMatrix::normalized(ComplexMatrix::Zero(2, 2)), DegenerateInputError);
}

TEST(QuantumChannel, IdentityAndDephasing) {
  const QuantumChannel id = identity_channel(3);
  const DensityMatrix s = random_state(3, 3, 1);
  EXPECT_LE((id(s.matrix()) - s.matrix()).norm(), 1e-15);

  const QuantumChannel deph = dephasing_channel(3);
  const ComplexMatrix out = deph(s.matrix());
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      if (i == j) {
        EXPECT_NEAR(std::abs(out(i, i) - s.matrix()(i, i)), 0.0, 1e-15);
      } else {
        EXPECT_EQ(out(i, j), Complex(0.0));
      }
    }
  }
}

TEST(QuantumChannel, RejectsNonTracePreservingKraus) {
  EXPECT_THROW(QuantumChannel(2, 2, {diag({1.0, 0.5})}), ValidationError);
}

TEST(QuantumChannel, ChoiRoundTrip) {
  const QuantumChannel phi = random_channel(3, 2, 3, 5);
  EXPECT_TRUE(phi.validate().ok);
  const QuantumChannel back = QuantumChannel::from_choi(phi.choi(), 3, 2);
  EXPECT_LE(choi_distance(phi, back), 1e-12);
  const DensityMatrix s = random_state(3, 2, 6);
  EXPECT_LE((phi(s.matrix()) - back(s.matrix())).norm(), 1e-12);
}

TEST(QuantumChannel, FromChoiRejectsNonPositive) {
  ComplexMatrix c = identity_channel(2).choi();
  c(0, 0) = -1.0;
  EXPECT_THROW(QuantumChannel::from_choi(c, 2, 2), ValidationError);
}

TEST(QuantumChannel, AdjointIsHilbertSchmidtDual) {
  Rng rng(7);
  const QuantumChannel phi = random_channel(3, 4, 2, 8);
  const ComplexMatrix x = complex_gaussian(3, 3, rng);
  const ComplexMatrix y = complex_gaussian(4, 4, rng);
  const Complex lhs = (y.adjoint() * phi(x)).trace();
  const Complex rhs = (phi.adjoint_apply(y).adjoint() * x).trace();
  EXPECT_LE(std::abs(lhs - rhs), 1e-12);
}

TEST(QuantumChannel, ComposeMatchesSuperoperatorProduct) {
  const QuantumChannel a = random_channel(2, 3, 2, 9);
  const QuantumChannel b = random_channel(3, 2, 3, 10);
  const QuantumChannel ba = compose(b, a);
  const oracle::Matrix expected = oracle::superoperator(b.kraus()) * oracle::superoperator(a.kraus());
  EXPECT_LE((oracle::superoperator(ba.kraus()) - expected).norm(), 1e-12);
  EXPECT_LE(static_cast<Index>(ba.kraus().size()), 4);
  EXPECT_THROW(compose(a, a), StructuralError);
}

TEST(QuantumChannel, ApplyChecksShape) {
  EXPECT_THROW(identity_channel(2)(ComplexMatrix::Identity(3, 3)), StructuralError);
}

TEST(RandomChannel, DeterministicAndValid) {
  const QuantumChannel a = random_channel(4, 4, 3, 42);
  const QuantumChannel b = random_channel(4, 4, 3, 42);
  EXPECT_EQ(a.kraus().size(), 3u);
  for (std::size_t k = 0; k < a.kraus().size(); ++k) EXPECT_EQ(a.kraus()[k], b.kraus()[k]);
  EXPECT_LE(a.trace_preservation_residual(), 1e-12);
  EXPECT_GE(a.validate().choi_min_eigenvalue, -1e-12);
  EXPECT_THROW(random_channel(4, 1, 2, 1), StructuralError);
}

TEST(RandomState, RankAndTrace) {
  const DensityMatrix s = random_state(5, 2, 3);
  EXPECT_NEAR(s.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_EQ(support_projection(s.matrix()).rank, 2);
  EXPECT_THROW(random_state(3, 4, 1), DomainError);
}

TEST(PartialTrace, ProductOperators) {
  const DensityMatrix a = random_state(2, 2, 11);
  const DensityMatrix b = random_state(3, 3, 12);
  const ComplexMatrix ab = tensor(a.matrix(), b.matrix());
  EXPECT_LE((partial_trace(ab, 2, 3, Subsystem::Right) - a.matrix()).norm(), 1e-14);
  EXPECT_LE((partial_trace(ab, 2, 3, Subsystem::Left) - b.matrix()).norm(), 1e-14);
  const QuantumChannel tr = partial_trace_channel(2, 3, Subsystem::Right);
  EXPECT_LE((tr(ab) - a.matrix()).norm(), 1e-14);
  const QuantumChannel tl = partial_trace_channel(2, 3, Subsystem::Left);
  EXPECT_LE((tl(ab) - b.matrix()).norm(), 1e-14);
}

TEST(AppendState, TensorsWithOmega) {
  const DensityMatrix omega = random_state(3, 2, 13);
  const QuantumChannel app = append_state_channel(2, omega);
  const DensityMatrix a = random_state(2, 2, 14);
  EXPECT_LE((app(a.matrix()) - tensor(a.matrix(), omega.matrix())).norm(), 1e-14);
  EXPECT_TRUE(app.validate().ok);
}

TEST(SupportContained, Cases) {
  EXPECT_TRUE(support_contained(diag_state({1.0, 0.0}), diag_state({0.5, 0.5})));
  EXPECT_FALSE(support_contained(diag_state({0.0, 1.0}), diag_state({1.0, 0.0})));
  EXPECT_TRUE(support_contained(random_state(4, 4, 1), random_state(4, 4, 2)));
}

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

namespace {

// Omega(X) = Tr_R(X) (x) omega on C^dl (x) C^dr.
QuantumChannel replace_right(Index dl, const DensityMatrix& omega) {
  return compose(append_state_channel(dl, omega), partial_trace_channel(dl, omega.dim(), Subsystem::Right));
}

}  // namespace

TEST(SuperOperator, MatchesKroneckerOracle) {
  const QuantumChannel phi = random_channel(3, 2, 2, 1);
  const SuperOperator s = SuperOperator::of_channel(phi);
  EXPECT_LE((s.matrix() - oracle::superoperator(phi.kraus())).norm(), 1e-13);
  const DensityMatrix rho = random_state(3, 3, 2);
  EXPECT_LE((s(rho.matrix()) - phi(rho.matrix())).norm(), 1e-13);
  EXPECT_LE((s.choi() - phi.choi()).norm(), 1e-13);
}

TEST(SuperOperator, AdjointAndComposition) {
  Rng rng(3);
  const QuantumChannel a = random_channel(2, 3, 2, 4);
  const QuantumChannel b = random_channel(3, 2, 2, 5);
  const ComplexMatrix y = complex_gaussian(3, 3, rng);
  EXPECT_LE((SuperOperator::of_adjoint(a)(y) - a.adjoint_apply(y)).norm(), 1e-13);
  const SuperOperator ba = SuperOperator::of_channel(b).after(SuperOperator::of_channel(a));
  EXPECT_LE((ba.matrix() - SuperOperator::of_channel(compose(b, a)).matrix()).norm(), 1e-12);
}

TEST(FixedPointBasis, Sizes) {
  EXPECT_EQ(fixed_point_basis(identity_channel(3)).size(), 9u);
  const auto deph = fixed_point_basis(dephasing_channel(2));
  ASSERT_EQ(deph.size(), 2u);
  EXPECT_LE(max_principal_angle(deph, {diag({1.0, 0.0}), diag({0.0, 1.0})}), 1e-10);
  EXPECT_EQ(fixed_point_basis(replace_right(2, random_state(3, 3, 6))).size(), 4u);
}

TEST(FixedPointBasis, ReplaceRightGivesLeftAlgebra) {
  const auto basis = fixed_point_basis(replace_right(2, random_state(2, 2, 7)));
  std::vector<ComplexMatrix> expected;
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      expected.push_back(tensor(e, ComplexMatrix::Identity(2, 2)));
    }
  }
  EXPECT_LE(max_principal_angle(basis, expected), 1e-10);
  for (const auto& b : basis) EXPECT_LE((b - b.adjoint()).norm(), 1e-12);
}

TEST(ConditionalExpectation, IdentityChannel) {
  const auto e = conditional_expectation(identity_channel(3), random_state(3, 3, 8));
  EXPECT_LE((e.map.matrix() - ComplexMatrix::Identity(9, 9)).norm(), 1e-12);
}

TEST(ConditionalExpectation, DephasingIsItsOwnLimit) {
  const auto e = conditional_expectation(dephasing_channel(2), diag_state({0.3, 0.7}));
  EXPECT_LE((e.map.matrix() - SuperOperator::of_channel(dephasing_channel(2)).matrix()).norm(), 1e-12);
  EXPECT_EQ(e.fixed_algebra_basis.size(), 2u);
}

TEST(ConditionalExpectation, ReplaceRightModuleProperty) {
  const DensityMatrix omega = random_state(2, 2, 9);
  const DensityMatrix sigma(tensor(random_state(3, 3, 10).matrix(), omega.matrix()));
  const auto e = conditional_expectation(replace_right(3, omega), sigma);
  Rng rng(11);
  const ComplexMatrix z = complex_gaussian(6, 6, rng);
  // E(Z) = Tr_R((I (x) omega) Z) (x) I_R.
  const ComplexMatrix weighted = tensor(ComplexMatrix::Identity(3, 3), omega.matrix()) * z;
  const ComplexMatrix expected = tensor(partial_trace(weighted, 3, 2, Subsystem::Right), ComplexMatrix::Identity(2, 2));
  EXPECT_LE((e(z) - expected).norm(), 1e-10);

  const ComplexMatrix a = tensor(complex_gaussian(3, 3, rng), ComplexMatrix::Identity(2, 2));
  const ComplexMatrix b = tensor(complex_gaussian(3, 3, rng), ComplexMatrix::Identity(2, 2));
  EXPECT_LE((e(a * z * b) - a * e(z) * b).norm(), 1e-8 * (a.norm() * z.norm() * b.norm()));
  EXPECT_LE((e(e(z)) - e(z)).norm(), 1e-8 * z.norm());
}

TEST(ConditionalExpectation, PreservesSigmaAndIsUnital) {
  const StructuredInstance inst = structured_instance({{2, 1}, {1, 2}}, 12);
  const QuantumChannel omega = compose(petz_map(inst.channel, inst.sigma), inst.channel);
  const auto e = conditional_expectation(omega, inst.sigma);
  EXPECT_LE((e(ComplexMatrix::Identity(4, 4)) - ComplexMatrix::Identity(4, 4)).norm(), 1e-9);
  EXPECT_LE((e.adjoint()(inst.sigma.matrix()) - inst.sigma.matrix()).norm(), 1e-9);
  EXPECT_LE(max_principal_angle(e.fixed_algebra_basis, fixed_space(e.map)), 1e-7);
}

TEST(ConditionalExpectation, Preconditions) {
  EXPECT_THROW(conditional_expectation(random_channel(2, 2, 2, 13), diag_state({0.5, 0.5})), PreconditionError);
  EXPECT_THROW(conditional_expectation(identity_channel(2), diag_state({1.0, 0.0})), PreconditionError);
}

TEST(Decompose, DephasingGivesTwoScalarBlocks) {
  const BlockStructure s = decompose(dephasing_channel(2), diag_state({0.3, 0.7}));
  ASSERT_EQ(s.blocks.size(), 2u);
  for (const auto& b : s.blocks) {
    EXPECT_EQ(b.d_left, 1);
    EXPECT_EQ(b.d_right, 1);
    EXPECT_NEAR(b.sigma_right.matrix()(0, 0).real(), 1.0, 1e-12);
  }
  // U is a permutation up to phases.
  for (Index i = 0; i < 2; ++i) EXPECT_NEAR(s.unitary.row(i).cwiseAbs().maxCoeff(), 1.0, 1e-10);
  EXPECT_LE(s.reconstruction_error(), 1e-8);
}

TEST(Decompose, ReplaceRightGivesOneBlock) {
  const DensityMatrix omega = random_state(3, 3, 14);
  const DensityMatrix sigma(tensor(random_state(2, 2, 15).matrix(), omega.matrix()));
  const BlockStructure s = decompose(replace_right(2, omega), sigma);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].d_left, 2);
  EXPECT_EQ(s.blocks[0].d_right, 3);
  // sigma_R equals omega up to a unitary on the right factor: compare spectra.
  const RealVector got = hermitian_eig(s.blocks[0].sigma_right.matrix()).eigenvalues;
  const RealVector want = hermitian_eig(omega.matrix()).eigenvalues;
  EXPECT_LE((got - want).norm(), 1e-9);
  EXPECT_LE(s.reconstruction_error(), 1e-8);
}

TEST(Decompose, IdentityGivesFullAlgebra) {
  const BlockStructure s = decompose(identity_channel(3), random_state(3, 3, 16));
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].d_left, 3);
  EXPECT_EQ(s.blocks[0].d_right, 1);
}

TEST(Decompose, RecoversPrescribedShapes) {
  const std::vector<std::vector<BlockShape>> cases{{{1, 2}, {2, 1}}, {{2, 2}}, {{1, 1}, {1, 1}, {1, 3}}, {{2, 3}}};
  std::uint64_t seed = 100;
  for (const auto& shapes : cases) {
    const StructuredInstance inst = structured_instance(shapes, seed++);
    const BlockStructure s = decompose_channel(inst.channel, inst.sigma);
    ASSERT_EQ(s.blocks.size(), shapes.size());
    std::vector<std::pair<Index, Index>> got;
    std::vector<std::pair<Index, Index>> want;
    for (const auto& b : s.blocks) got.emplace_back(b.d_left, b.d_right);
    for (const auto& b : shapes) want.emplace_back(b.d_left, b.d_right);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
    const StructureCheck c = check_structure(s, fixed_point_basis(compose(petz_map(inst.channel, inst.sigma), inst.channel)));
    EXPECT_TRUE(c.dims_ok);
    EXPECT_LE(c.unitarity, 1e-9);
    EXPECT_LE(c.reconstruction, 1e-8);
    EXPECT_LE(c.algebra_form, 1e-8);
  }
}

TEST(Decompose, DeterministicPerSeed) {
  const StructuredInstance inst = structured_instance({{1, 2}, {1, 1}}, 17);
  const BlockStructure a = decompose_channel(inst.channel, inst.sigma);
  const BlockStructure b = decompose_channel(inst.channel, inst.sigma);
  EXPECT_EQ(a.unitary, b.unitary);
}

TEST(Decompose, RequiresFaithfulInvariantSigma) {
  EXPECT_THROW(decompose(identity_channel(2), diag_state({1.0, 0.0})), PreconditionError);
  EXPECT_THROW(decompose(random_channel(2, 2, 2, 18), diag_state({0.5, 0.5})), PreconditionError);
}

TEST(Membership, Cases) {
  const StructuredInstance inst = structured_instance({{2, 1}, {1, 2}}, 19);
  const BlockStructure s = decompose_channel(inst.channel, inst.sigma);
  EXPECT_TRUE(membership_test(inst.sigma, s));
  const DensityMatrix built = build_sufficient_instance(s, 20);
  EXPECT_TRUE(membership_test(built, s));
  EXPECT_TRUE(is_sufficient(inst.channel, built, inst.sigma).sufficient);

  // Mix in a pure state coherent across the first and last block.
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = std::sqrt(0.5);
  const ComplexVector v = s.unitary.adjoint() * psi;
  const DensityMatrix bad(0.8 * built.matrix() + 0.2 * v * v.adjoint());
  EXPECT_FALSE(membership_test(bad, s));
  EXPECT_FALSE(is_sufficient(inst.channel, bad, inst.sigma, {.tol_suff = 1e-6}).sufficient);
}

TEST(Membership, AgreesWithSufficiencyOnRandomStates) {
  const StructuredInstance inst = structured_instance({{1, 2}, {2, 1}}, 21);
  const BlockStructure s = decompose_channel(inst.channel, inst.sigma);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(4, 4, 500 + seed);
    EXPECT_EQ(membership_test(rho, s), is_sufficient(inst.channel, rho, inst.sigma, {.tol_suff = 1e-6}).sufficient);
  }
}

TEST(BuildSufficientInstance, DephasingGivesDiagonalState) {
  const BlockStructure s = decompose(dephasing_channel(3), diag_state({0.2, 0.3, 0.5}));
  const DensityMatrix rho = build_sufficient_instance(s, 22);
  ComplexMatrix off = rho.matrix();
  off.diagonal().setZero();
  EXPECT_LE(off.norm(), 1e-12);
}

TEST(BuildSufficientInstance, ProductStructureKeepsOmega) {
  const DensityMatrix omega = random_state(2, 2, 23);
  const DensityMatrix sigma(tensor(random_state(2, 2, 24).matrix(), omega.matrix()));
  const BlockStructure s = decompose(replace_right(2, omega), sigma);
  const DensityMatrix rho = build_sufficient_instance(s, 25);
  const ComplexMatrix b = partial_trace(rho.matrix(), 2, 2, Subsystem::Right);
  EXPECT_LE((rho.matrix() - tensor(b, omega.matrix())).norm(), 1e-10);
}

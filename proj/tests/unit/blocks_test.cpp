// Copyright 2026 The armapred Authors.
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

#include "armapred/blocks.hpp"
#include "armapred/model_io.hpp"
#include "armapred/oracle.hpp"
#include "armapred/pipeline.hpp"
#include "test_models.hpp"

namespace armapred {
namespace {

using testing::arma_m0_spec;
using testing::ma1_spec;
using testing::triangular_spec;

OuterInverseDecomposition scalar_pole(Complex p, int m) {
  OuterInverseDecomposition pd;
  pd.d = 1;
  pd.poles = {{p, m}};
  pd.rho0 = ComplexMatrix::Zero(1, 1);
  pd.rho = {MatrixList(m, ComplexMatrix::Constant(1, 1, -1.0))};
  return pd;
}

// d = 2, poles of multiplicity 1 and 2 with arbitrary residues.
OuterInverseDecomposition two_pole_data() {
  OuterInverseDecomposition pd;
  pd.d = 2;
  pd.poles = {{Complex(0.5, 0.1), 1}, {Complex(-0.3, 0.4), 2}};
  pd.rho0 = -ComplexMatrix::Identity(2, 2);
  ComplexMatrix a(2, 2), b(2, 2), c(2, 2);
  a << 0.25, Complex(0, 0.5), -0.125, 1.0;
  b << Complex(0.5, -0.25), 0.0, 0.75, 0.25;
  c << 0.0, 1.0, Complex(0.125, 0.125), -0.5;
  pd.rho = {{a}, {b, c}};
  return pd;
}

TEST(Blocks, PFunctionValues) {
  EXPECT_NEAR(std::abs(p_function(0.5, 1, 3) - 0.125), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(p_function(0.5, 2, 2) - 1.0), 0.0, 1e-16);
  EXPECT_EQ(p_function(0.5, 1, 0), Complex(1.0));
  EXPECT_EQ(p_function(0.5, 2, 0), Complex(0.0));
  EXPECT_EQ(p_function(0.5, 3, 1), Complex(0.0));
}

TEST(Blocks, PVecShapes) {
  const OuterInverseDecomposition pd = two_pole_data();
  const ComplexMatrix p0 = p_vec(pd, 0);
  ASSERT_EQ(p0.rows(), 6);
  ASSERT_EQ(p0.cols(), 2);
  ComplexMatrix expect = ComplexMatrix::Zero(6, 2);
  expect.block(0, 0, 2, 2).setIdentity();
  expect.block(2, 0, 2, 2).setIdentity();
  EXPECT_LT(max_abs(p0 - expect), 1e-16);
  EXPECT_LT(max_abs(p_vec(scalar_pole(0.5, 1), 3) - ComplexMatrix::Constant(1, 1, 0.125)), 1e-16);
}

TEST(Blocks, LambdaClosedFormAgainstSum) {
  EXPECT_NEAR(std::abs(lambda_matrix(scalar_pole(0.5, 1))(0, 0) - 4.0 / 3.0), 0.0, 1e-15);
  for (const OuterInverseDecomposition& pd : {scalar_pole(0.5, 2), two_pole_data()}) {
    ComplexMatrix sum = ComplexMatrix::Zero(pd.d * pd.M(), pd.d * pd.M());
    for (long l = 0; l <= 400; ++l) {
      const ComplexMatrix p = p_vec(pd, l);
      sum += p * p.adjoint();
    }
    EXPECT_LT(max_abs(lambda_matrix(pd) - sum), 1e-10);
  }
}

TEST(Blocks, XiClosedFormAndRecursion) {
  EXPECT_NEAR(std::abs(xi_direct(scalar_pole(0.5, 1), 1)(0, 0) - 2.0 / 3.0), 0.0, 1e-15);
  const OuterInverseDecomposition pd = two_pole_data();
  const MatrixList seq = xi_sequence(pd, 5);
  ASSERT_EQ(seq.size(), 5u);
  for (long n = 1; n <= 5; ++n) EXPECT_LT(max_abs(seq[n - 1] - xi_direct(pd, n)), 1e-12) << n;
  // Xi_n = sum_l p_l q_{n+l}^T where q_k stacks binom(k+j-1, j-1) conj(p)^k I, the
  // weights of a_k.
  auto q = [&](long k) {
    ComplexMatrix out = ComplexMatrix::Zero(6, 2);
    Eigen::Index row = 0;
    for (const Pole& pole : pd.poles)
      for (int j = 1; j <= pole.multiplicity; ++j, row += 2)
        out.block(row, 0, 2, 2) = (binomial(k + j - 1, j - 1) * ipow(std::conj(pole.p), k)) *
                                  ComplexMatrix::Identity(2, 2);
    return out;
  };
  for (long n : {1L, 4L}) {
    ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
    for (long l = 0; l <= 400; ++l) sum += p_vec(pd, l) * q(n + l).transpose();
    EXPECT_LT(max_abs(xi_direct(pd, n) - sum), 1e-10) << n;
  }
}

TEST(Blocks, PiMatrix) {
  const OuterInverseDecomposition pd = scalar_pole(0.5, 2);
  ComplexMatrix expect(2, 2);
  expect << 0.25, 1.0, 0.0, 0.25;
  EXPECT_LT(max_abs(pi_matrix(pd, 2) - expect), 1e-15);
  EXPECT_LT(max_abs(pi_matrix(two_pole_data(), 0) - ComplexMatrix::Identity(6, 6)), 1e-15);
  // p_0^T Pi_n = p_n^T.
  const OuterInverseDecomposition two = two_pole_data();
  EXPECT_LT(max_abs(p_vec(two, 0).transpose() * pi_matrix(two, 7) - p_vec(two, 7).transpose()),
            1e-15);
}

TEST(Blocks, Ma1Theta) {
  const PreparedModel pm = prepare(ma1_spec());
  ASSERT_TRUE(pm.blocks);
  const BuildingBlocks& bb = *pm.blocks;
  ASSERT_EQ(bb.M, 1);
  EXPECT_NEAR(std::abs(bb.theta(0, 0) - 0.375), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(bb.lambda(0, 0) - 4.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(bb.c0(0, 0) - 1.0), 0.0, 1e-14);
}

TEST(Blocks, SimplePoleThetaBlock) {
  const PreparedModel pm = prepare(triangular_spec(0.4));
  const BuildingBlocks& bb = *pm.blocks;
  const Complex p = bb.pd.poles[0].p;
  const ComplexMatrix expect = p * sharp_at(pm.pd_sharp, p) * bb.pd.rho[0][0].adjoint();
  EXPECT_LT(max_abs(bb.theta_coef[1][0] - expect), 1e-10);
  EXPECT_LT(max_abs(bb.theta - expect), 1e-10);
}

TEST(Blocks, ThetaAgainstContourIntegrals) {
  for (const auto& bm : testing::battery()) {
    const PreparedModel pm = prepare(bm.spec);
    ASSERT_TRUE(pm.blocks) << bm.name;
    const std::vector<MatrixList> contour = theta_by_contour(pm.h, pm.sf, pm.pd);
    const std::vector<MatrixList>& coef = pm.blocks->theta_coef;
    ASSERT_EQ(contour.size(), coef.size()) << bm.name;
    for (std::size_t mu = 0; mu < coef.size(); ++mu) {
      ASSERT_EQ(contour[mu].size(), coef[mu].size()) << bm.name;
      for (std::size_t j = 0; j < coef[mu].size(); ++j)
        EXPECT_LT(max_abs(contour[mu][j] - coef[mu][j]), 1e-8 * (1 + max_abs(coef[mu][j])))
            << bm.name << " mu=" << mu << " j=" << j + 1;
    }
  }
}

TEST(Blocks, RhoStacks) {
  const PreparedModel pm = prepare(triangular_spec(0.4));
  const auto [rho, rho_tilde] = rho_stacks(pm.pd, pm.pd_sharp);
  EXPECT_LT(max_abs(rho - pm.pd.rho[0][0]), 1e-15);
  EXPECT_LT(max_abs(rho_tilde - pm.pd_sharp.rho[0][0].adjoint()), 1e-15);
  const PreparedModel one = prepare(ma1_spec());
  const auto [r1, rt1] = rho_stacks(one.pd, one.pd_sharp);
  EXPECT_LT(max_abs(rt1 - r1.conjugate()), 1e-12);
}

TEST(Blocks, VVectorsAgainstDefiningSeries) {
  for (const auto& bm : testing::battery()) {
    const PreparedModel pm = prepare(bm.spec);
    const BuildingBlocks& bb = *pm.blocks;
    for (long n : {1L, 2L, 3L, 7L}) {
      const auto [v, vt] = v_vectors(bb, n);
      ComplexMatrix sum = ComplexMatrix::Zero(v.rows(), v.cols());
      ComplexMatrix sum_t = ComplexMatrix::Zero(vt.rows(), vt.cols());
      for (long l = 0; l <= 300; ++l) {
        const ComplexMatrix p = p_vec(bb.pd, l);
        sum += p * ar_coefficient(bb.pd, n + l);
        sum_t += p.conjugate() * ar_tilde_coefficient(bb.pd_sharp, n + l);
      }
      EXPECT_LT(max_abs(v - sum), 1e-10) << bm.name << " n=" << n;
      EXPECT_LT(max_abs(vt - sum_t), 1e-10) << bm.name << " n=" << n;
    }
  }
}

TEST(Blocks, PolynomialPartCorrectionAtFirstHorizon) {
  const PreparedModel pm = prepare(arma_m0_spec());
  const BuildingBlocks& bb = *pm.blocks;
  ASSERT_EQ(bb.m0, 1);
  const auto [v, vt] = v_vectors(bb, 1);
  const ComplexMatrix without = xi_direct(bb.pd, 1) * bb.rho;
  EXPECT_LT(max_abs((v - without) - p_vec(bb.pd, 0) * bb.pd.rho0j[0]), 1e-15);
  // Without a polynomial part, v_n = Xi_n rho.
  const PreparedModel tri = prepare(triangular_spec(0.4));
  const auto [v3, vt3] = v_vectors(*tri.blocks, 3);
  EXPECT_LT(max_abs(v3 - xi_direct(tri.pd, 3) * tri.blocks->rho), 1e-15);
}

TEST(Blocks, InvalidHorizon) {
  const PreparedModel pm = prepare(ma1_spec());
  EXPECT_THROW(v_vectors(*pm.blocks, 0), Error);
}

}  // namespace
}  // namespace armapred

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mrinep/error.hpp"
#include "mrinep/linalg.hpp"
#include "test_util.hpp"

namespace mrinep::linalg
{
namespace
{

using mrinep::testing::random_matrix;

HermitianMatrix herm(std::initializer_list<std::initializer_list<double>> rows)
{
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto &row : rows)
  {
    Eigen::Index j = 0;
    for (double v : row)
      m(i, j++) = v;
    ++i;
  }
  return HermitianMatrix::from_upper(m);
}

std::vector<Complex> sorted(std::vector<Complex> v)
{
  std::sort(v.begin(), v.end(), complex_less);
  return v;
}

TEST(HermitianMatrix, LowerTriangleIsDerivedFromUpper)
{
  CMatrix m(2, 2);
  m << Complex(1, 5), Complex(2, 3), Complex(9, 9), Complex(4, -1);
  const auto h = HermitianMatrix::from_upper(m);
  EXPECT_EQ(h(1, 0), std::conj(h(0, 1)));
  EXPECT_EQ(h(0, 0).imag(), 0.0);
  EXPECT_EQ(h(1, 1).imag(), 0.0);
  EXPECT_DOUBLE_EQ(h.trace(), 5.0);
}

TEST(HermitianEig, TwoByTwoByHand)
{
  const auto e = hermitian_eig(herm({{1, -1}, {-1, 1}}));
  EXPECT_NEAR(e.values(0), 0.0, 1e-14);
  EXPECT_NEAR(e.values(1), 2.0, 1e-14);
  const CVector v = e.vectors.col(0);
  EXPECT_NEAR(std::abs(v(0)), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(v(0) - v(1)), 0.0, 1e-14);
}

TEST(HermitianEig, Identity)
{
  const auto e = hermitian_eig(HermitianMatrix::from_upper(CMatrix::Identity(3, 3)));
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(e.values(i), 1.0, 1e-15);
}

TEST(HermitianEig, DiagonalGivesPermutedIdentity)
{
  const auto e = hermitian_eig(herm({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 2.0, 1e-15);
  EXPECT_NEAR(e.values(2), 3.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(2, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(0, 2)), 1.0, 1e-15);
}

TEST(HermitianEig, ReconstructionPropertyUpToOrder64)
{
  std::mt19937_64 rng(11);
  for (Eigen::Index n : {1, 2, 5, 17, 33, 64})
  {
    const CMatrix a = random_matrix(rng, n, n);
    const auto g = HermitianMatrix::from_upper(a + a.adjoint());
    const auto e = hermitian_eig(g);
    const CMatrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((rebuilt - g.matrix()).norm(), 1e-12 * g.matrix().norm()) << "order " << n;
    EXPECT_LE((e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index i = 1; i < n; ++i)
      EXPECT_LE(e.values(i - 1), e.values(i));
  }
}

TEST(SolveHermitian, ScaledIdentity)
{
  CVector b(2);
  b << 1.0, 1.0;
  const CVector x = solve_hermitian(HermitianMatrix::from_upper(2.0 * CMatrix::Identity(2, 2)), b);
  EXPECT_NEAR(std::abs(x(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x(1) - 0.5), 0.0, 1e-15);
}

TEST(SolveHermitian, Diagonal)
{
  CVector b(2);
  b << 2.0, 3.0;
  const CVector x = solve_hermitian(herm({{2, 0}, {0, 1}}), b);
  EXPECT_NEAR(std::abs(x(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x(1) - 3.0), 0.0, 1e-15);
}

TEST(SolveHermitian, SingularRaisesNearSingular)
{
  CVector b(2);
  b << 1.0, 1.0;
  try
  {
    solve_hermitian(herm({{1, -1}, {-1, 1}}), b);
    FAIL() << "expected near_singular";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::near_singular);
  }
}

TEST(SolveHermitian, ResidualBoundOnRandomSystems)
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial)
  {
    const CMatrix a = random_matrix(rng, 6, 6);
    const auto g = HermitianMatrix::from_upper(a * a.adjoint() + CMatrix::Identity(6, 6));
    const CVector b = random_matrix(rng, 6, 1);
    const CVector x = solve_hermitian(g, b);
    EXPECT_LE((g.matrix() * x - b).norm(), 1e-10 * g.matrix().norm() * x.norm());
  }
}

TEST(Arrowhead, TwoNodeQuarterWeights)
{
  const std::vector<Complex> z{1.0, -1.0}, q{0.25, 0.75};
  const auto eigs = arrowhead_pole_eigs(z, q);
  ASSERT_EQ(eigs.size(), 1u);
  EXPECT_NEAR(std::abs(eigs[0] - 0.5), 0.0, 1e-12);
}

TEST(Arrowhead, FigureOneRight)
{
  const std::vector<Complex> z{1.0, -1.0}, q{1.5, -0.5};
  const auto eigs = arrowhead_pole_eigs(z, q);
  ASSERT_EQ(eigs.size(), 1u);
  EXPECT_NEAR(std::abs(eigs[0] + 2.0), 0.0, 1e-12);
}

TEST(Arrowhead, ThreeNodeExample)
{
  const std::vector<Complex> z{0.0, 2.0, 3.0}, q{-1.0 / 6, -1.5, 8.0 / 3};
  const auto eigs = sorted(arrowhead_pole_eigs(z, q));
  ASSERT_EQ(eigs.size(), 2u);
  EXPECT_NEAR(std::abs(eigs[0] + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eigs[1] - 1.0), 0.0, 1e-12);
}

TEST(Arrowhead, DegreeDropGivesFewerPoles)
{
  // q = (1/2, 1/2) on (0, 2): d(z) = (z - 1) / (z (z - 2)), sum q = 1 -> one pole at 1.
  // q = (1/2, -1/2) on (0, 2): d(z) = -1 / (z (z - 2)), sum q = 0 -> no finite pole.
  const std::vector<Complex> z{0.0, 2.0};
  EXPECT_EQ(arrowhead_pole_eigs(z, std::vector<Complex>{0.5, 0.5}).size(), 1u);
  EXPECT_TRUE(arrowhead_pole_eigs(z, std::vector<Complex>{0.5, -0.5}).empty());
}

TEST(Arrowhead, AllZeroWeightsRejected)
{
  const std::vector<Complex> z{0.0, 1.0}, q{0.0, 0.0};
  EXPECT_THROW(arrowhead_pole_eigs(z, q), Error);
}

TEST(Arrowhead, RootPropertyAndNewtonAgreementOnRandomSets)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial)
  {
    const Eigen::Index s = 2 + trial % 9;
    const CMatrix zm = random_matrix(rng, s, 1);
    const CMatrix qm = random_matrix(rng, s, 1);
    const std::vector<Complex> z(zm.data(), zm.data() + s), q(qm.data(), qm.data() + s);
    const double qmax = qm.cwiseAbs().maxCoeff();
    const auto eigs = arrowhead_pole_eigs(z, q);
    EXPECT_LE(eigs.size(), static_cast<std::size_t>(s - 1));
    for (Complex lambda : eigs)
    {
      double dist = std::numeric_limits<double>::infinity();
      for (Complex node : z)
        dist = std::min(dist, std::abs(lambda - node));
      EXPECT_LE(std::abs(barycentric_denominator(z, q, lambda)), 1e-8 * qmax / dist);
      const auto polished = newton_polish_root(z, q, lambda);
      EXPECT_LE(std::abs(polished.root - lambda), 1e-8 * (1.0 + std::abs(lambda)));
    }
  }
}

TEST(Arrowhead, WeightScalingInvariance)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial)
  {
    const Eigen::Index s = 3 + trial % 5;
    const CMatrix zm = random_matrix(rng, s, 1), qm = random_matrix(rng, s, 1);
    const std::vector<Complex> z(zm.data(), zm.data() + s), q(qm.data(), qm.data() + s);
    const Complex alpha(-3.7, 0.4);
    std::vector<Complex> qa;
    for (Complex w : q)
      qa.push_back(alpha * w);
    const auto a = sorted(arrowhead_pole_eigs(z, q));
    const auto b = sorted(arrowhead_pole_eigs(z, qa));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_LE(std::abs(a[i] - b[i]), 1e-12 * (1.0 + std::abs(a[i])));
  }
}

TEST(Barycentric, DenominatorAndDerivativeByHand)
{
  const std::vector<Complex> z{0.0, 2.0}, q{0.5, 0.5};
  EXPECT_NEAR(std::abs(barycentric_denominator(z, q, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(barycentric_denominator_derivative(z, q, 1.0) + 1.0), 0.0, 1e-15);
  const std::vector<Complex> z1{0.0}, q1{1.0};
  EXPECT_NEAR(std::abs(barycentric_denominator_derivative(z1, q1, 2.0) + 0.25), 0.0, 1e-15);
}

TEST(Newton, LinearNumeratorRoot)
{
  const std::vector<Complex> z{1.0, -1.0}, q{0.25, 0.75};
  const auto r = newton_polish_root(z, q, 0.49);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.root - 0.5), 0.0, 1e-12);
}

TEST(Newton, ExactRootIsFixedPoint)
{
  const std::vector<Complex> z{1.0, -1.0}, q{0.25, 0.75};
  const auto r = newton_polish_root(z, q, 0.5);
  EXPECT_EQ(r.root, Complex(0.5));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_FALSE(r.no_progress);
}

TEST(Newton, ThreeNodeExample)
{
  const std::vector<Complex> z{0.0, 2.0, 3.0}, q{-1.0 / 6, -1.5, 8.0 / 3};
  const auto r = newton_polish_root(z, q, 1.1);
  EXPECT_NEAR(std::abs(r.root - 1.0), 0.0, 1e-12);
}

TEST(Newton, FlatDerivativeFlagsNoProgress)
{
  // d(z) = -1 / (z (z - 2)) has no root; near the critical point z = 1, d' = 0.
  const std::vector<Complex> z{0.0, 2.0}, q{0.5, -0.5};
  const auto r = newton_polish_root(z, q, 1.0, 20);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.no_progress);
  EXPECT_EQ(r.root, Complex(1.0));
}

} // namespace
} // namespace mrinep::linalg

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "mrinep/error.hpp"
#include "mrinep/mri.hpp"
#include "test_util.hpp"

namespace mrinep
{
namespace
{

using mrinep::testing::random_matrix;
using mrinep::testing::random_unit;

CMatrix col(std::initializer_list<Complex> v)
{
  CMatrix m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (Complex x : v)
    m(i++, 0) = x;
  return m;
}

// u(z) = (1/(z-1), 1/(z+1))
CMatrix two_pole(Complex z) { return col({1.0 / (z - 1.0), 1.0 / (z + 1.0)}); }

SampleSet sample(const std::vector<Complex> &nodes, CMatrix (*u)(Complex))
{
  std::vector<CMatrix> values;
  for (Complex z : nodes)
    values.push_back(u(z));
  return SampleSet(nodes, values);
}

const std::vector<Complex> three_nodes{0.0, 2.0, 3.0};

BarycentricSurrogate three_node_surrogate()
{
  CVector q(3);
  q << -1.0 / 6, -1.5, 8.0 / 3;
  return BarycentricSurrogate(sample(three_nodes, two_pole), q, Normalization::as_given);
}

TEST(SampleSet, RejectsCoincidentNodesAndShapeMismatch)
{
  EXPECT_THROW(SampleSet({0.0, 0.0}, {col({1.0}), col({2.0})}), Error);
  EXPECT_THROW(SampleSet({0.0, 1.0}, {col({1.0}), col({1.0, 2.0})}), Error);
  SampleSet s({0.0, 1.0}, {col({1.0}), col({2.0})});
  EXPECT_THROW(s.add(1.0, col({3.0})), Error);
  s.add(2.0, col({3.0}));
  EXPECT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s.diameter(), 2.0);
}

TEST(Gramian, ScalarByHand)
{
  const auto g = build_gramian(SampleSet({0.0, 2.0}, {col({-1.0}), col({1.0})}));
  EXPECT_EQ(g(0, 0), Complex(1.0));
  EXPECT_EQ(g(0, 1), Complex(-1.0));
  EXPECT_EQ(g(1, 0), Complex(-1.0));
  EXPECT_EQ(g(1, 1), Complex(1.0));
}

TEST(Gramian, OrthonormalValuesGiveIdentity)
{
  const auto g = build_gramian(SampleSet({0.0, 1.0, 2.0}, {col({1.0, 0.0, 0.0}), col({0.0, 1.0, 0.0}),
                                                          col({0.0, 0.0, Complex(0, 1)})}));
  EXPECT_LE((g.matrix() - CMatrix::Identity(3, 3)).norm(), 0.0);
}

TEST(Gramian, FrobeniusForBlocks)
{
  const CMatrix i2 = CMatrix::Identity(2, 2);
  const auto g = build_gramian(SampleSet({0.0, 1.0}, {i2, CMatrix(2.0 * i2)}));
  EXPECT_EQ(g(0, 0), Complex(2.0));
  EXPECT_EQ(g(0, 1), Complex(4.0));
  EXPECT_EQ(g(1, 1), Complex(8.0));
}

TEST(Gramian, PositiveSemidefiniteOnRandomData)
{
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial)
  {
    std::vector<Complex> nodes;
    std::vector<CMatrix> values;
    for (int j = 0; j < 8; ++j)
    {
      nodes.emplace_back(j, 0.0);
      values.push_back(random_matrix(rng, 3, 1 + trial % 3));
    }
    const auto g = build_gramian(SampleSet(nodes, values));
    EXPECT_GE(linalg::hermitian_eig(g).values(0), -1e-12 * g.trace());
  }
}

TEST(MriWeights, EuclideanSmallestEigenvector)
{
  CMatrix m(2, 2);
  m << 1.0, -1.0, -1.0, 1.0;
  const auto w = mri_weights(linalg::HermitianMatrix::from_upper(m), Normalization::euclidean);
  EXPECT_NEAR(std::abs(w.q(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(w.q(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_FALSE(w.robust_fallback);
}

TEST(MriWeights, ConstrainedSumIdentity)
{
  const auto w = mri_weights(linalg::HermitianMatrix::from_upper(CMatrix::Identity(2, 2)),
                             Normalization::constrained_sum);
  EXPECT_NEAR(std::abs(w.q(0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(w.q(1) - 0.5), 0.0, 1e-15);
  EXPECT_FALSE(w.robust_fallback);
}

TEST(MriWeights, ConstrainedSumFallsBackOnExactRationalData)
{
  const auto w = mri_weights(build_gramian(sample(three_nodes, two_pole)), Normalization::constrained_sum);
  EXPECT_TRUE(w.robust_fallback);
  EXPECT_NEAR(std::abs(w.q(0) + 1.0 / 6), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(w.q(1) + 1.5), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(w.q(2) - 8.0 / 3), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(w.q.sum() - 1.0), 0.0, 1e-10);
}

TEST(MriWeights, FallbackWithZeroSumIsFlagged)
{
  // Samples of 1/(z(z-2)) scaled: the null vector of G is (1,-1) up to scale, sum 0.
  const auto w = mri_weights(build_gramian(SampleSet({0.0, 2.0}, {col({1.0}), col({1.0})})),
                             Normalization::constrained_sum);
  EXPECT_TRUE(w.robust_fallback);
  EXPECT_TRUE(w.sum_unnormalizable);
}

TEST(MriWeights, OrderOneRejected)
{
  EXPECT_THROW(mri_weights(linalg::HermitianMatrix::from_upper(CMatrix::Identity(1, 1)), Normalization::euclidean),
               Error);
}

TEST(MriWeights, AmbiguityFlagOnRepeatedSmallestEigenvalue)
{
  // Collinear scalar samples: G has rank one, two zero eigenvalues.
  const auto g = build_gramian(SampleSet({0.0, 1.0, 2.0}, {col({1.0}), col({2.0}), col({3.0})}));
  EXPECT_TRUE(mri_weights(g, Normalization::euclidean).weight_ambiguous);
  EXPECT_FALSE(mri_weights(build_gramian(sample(three_nodes, two_pole)), Normalization::euclidean).weight_ambiguous);
}

TEST(MriWeights, QrRouteMatchesGramianRoute)
{
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial)
  {
    std::vector<Complex> nodes;
    std::vector<CMatrix> values;
    for (int j = 0; j < 5; ++j)
    {
      nodes.emplace_back(0.3 * j, 0.1 * trial);
      values.push_back(random_matrix(rng, 7, 1 + trial % 2));
    }
    const SampleSet s(nodes, values);
    const CVector a = mri_weights(build_gramian(s), Normalization::euclidean).q;
    const CVector b = mri_weights_qr(s).q;
    EXPECT_NEAR(b.norm(), 1.0, 1e-12);
    // Same unit vector up to a phase.
    EXPECT_NEAR(std::abs(a.dot(b)), 1.0, 1e-8);
  }
}

TEST(MriWeights, MinimalityEuclidean)
{
  std::mt19937_64 rng(4);
  std::vector<Complex> nodes;
  std::vector<CMatrix> values;
  double values_norm2 = 0.0;
  for (int j = 0; j < 6; ++j)
  {
    nodes.emplace_back(j, 0.5 * j);
    values.push_back(random_matrix(rng, 4, 2));
    values_norm2 += values.back().squaredNorm();
  }
  const SampleSet s(nodes, values);
  auto objective = [&](const CVector &q) {
    CMatrix sum = CMatrix::Zero(4, 2);
    for (int j = 0; j < 6; ++j)
      sum += q(j) * values[j];
    return sum.norm();
  };
  for (bool qr : {false, true})
  {
    const CVector q = qr ? mri_weights_qr(s).q : mri_weights(build_gramian(s), Normalization::euclidean).q;
    EXPECT_NEAR(q.norm(), 1.0, 1e-12);
    for (int trial = 0; trial < 200; ++trial)
      EXPECT_LE(objective(q), objective(random_unit(rng, 6)) + 1e-10 * std::sqrt(values_norm2));
  }
}

TEST(MriWeights, MinimalityConstrainedSum)
{
  std::mt19937_64 rng(6);
  std::vector<Complex> nodes;
  std::vector<CMatrix> values;
  double values_norm2 = 0.0;
  for (int j = 0; j < 4; ++j)
  {
    nodes.emplace_back(j, 0.0);
    values.push_back(random_matrix(rng, 6, 1));
    values_norm2 += values.back().squaredNorm();
  }
  const SampleSet s(nodes, values);
  const auto g = build_gramian(s);
  const auto w = mri_weights(g, Normalization::constrained_sum);
  ASSERT_FALSE(w.robust_fallback);
  EXPECT_NEAR(std::abs(w.q.sum() - 1.0), 0.0, 1e-10);
  auto objective = [&](const CVector &q) { return (q.adjoint() * g.matrix() * q)(0, 0).real(); };
  for (int trial = 0; trial < 200; ++trial)
  {
    CVector p = random_matrix(rng, 4, 1);
    p -= CVector::Constant(4, p.sum() / 4.0); // sum zero
    const CVector q2 = w.q + 0.1 * p;
    EXPECT_LE(objective(w.q), objective(q2) + 1e-10 * values_norm2);
  }
}

TEST(Surrogate, DenominatorExamples)
{
  const SampleSet two_node({1.0, -1.0}, {col({1.0}), col({1.0})});
  CVector q(2);
  q << 0.25, 0.75;
  const BarycentricSurrogate s(two_node, q, Normalization::as_given);
  EXPECT_NEAR(std::abs(s.denominator(0.0) - 0.5), 0.0, 1e-15);

  CVector h(2);
  h << 0.5, 0.5;
  const BarycentricSurrogate t(SampleSet({0.0, 2.0}, {col({1.0}), col({1.0})}), h, Normalization::as_given);
  EXPECT_NEAR(std::abs(t.denominator(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.denominator_derivative(1.0) + 1.0), 0.0, 1e-15);

  // z d(z) -> sum q as z -> infinity
  EXPECT_NEAR(std::abs(1e9 * s.denominator(1e9) - 1.0), 0.0, 1e-8);
  EXPECT_THROW(s.denominator(1.0), Error);
}

TEST(Surrogate, SingleNodeDerivative)
{
  CVector q(1);
  q << 1.0;
  const BarycentricSurrogate s(SampleSet({0.0}, {col({1.0})}), q, Normalization::as_given);
  EXPECT_NEAR(std::abs(s.denominator_derivative(2.0) + 0.25), 0.0, 1e-15);
}

TEST(Surrogate, ThreeNodeExampleByHand)
{
  const auto s = three_node_surrogate();
  EXPECT_NEAR(std::abs(s.denominator_derivative(1.0) - 1.0), 0.0, 1e-14);
  const CMatrix n1 = s.numerator(1.0);
  EXPECT_NEAR(std::abs(n1(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(n1(1, 0)), 0.0, 1e-14);
  const CMatrix u4 = s.evaluate(4.0);
  EXPECT_NEAR(std::abs(u4(0, 0) - 1.0 / 3), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(u4(1, 0) - 0.2), 0.0, 1e-14);
}

TEST(Surrogate, NumeratorLinearityCases)
{
  CVector q(1);
  q << 1.0;
  const CMatrix b = col({2.0, Complex(0, 3)});
  const BarycentricSurrogate s(SampleSet({0.5}, {b}), q, Normalization::as_given);
  EXPECT_LE((s.numerator(1.5) - b).norm(), 1e-15);

  const BarycentricSurrogate zero(SampleSet({0.0, 1.0}, {CMatrix::Zero(2, 1), CMatrix::Zero(2, 1)}),
                                  CVector::Ones(2), Normalization::as_given);
  EXPECT_EQ(zero.numerator(0.3).norm(), 0.0);
}

TEST(Surrogate, InterpolatesBitwiseAtNodes)
{
  std::mt19937_64 rng(9);
  std::vector<Complex> nodes;
  std::vector<CMatrix> values;
  for (int j = 0; j < 7; ++j)
  {
    nodes.emplace_back(std::cos(j), std::sin(2 * j));
    values.push_back(random_matrix(rng, 3, 2));
  }
  for (auto mode : {Normalization::euclidean, Normalization::constrained_sum})
  {
    const auto s = build_surrogate(SampleSet(nodes, values), mode);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      EXPECT_TRUE(s.evaluate(nodes[j]) == values[j]);
  }
}

TEST(Surrogate, ScalingInvariance)
{
  const auto s = three_node_surrogate();
  const BarycentricSurrogate t(s.samples(), CVector(5.0 * s.weights()), Normalization::as_given);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 10; ++i)
  {
    const Complex z = random_matrix(rng, 1, 1)(0, 0) * 3.0;
    const CMatrix a = s.evaluate(z), b = t.evaluate(z);
    EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
  }
}

TEST(Surrogate, WeightNormalizationInvariants)
{
  const auto e = build_surrogate(sample({0.0, 0.5, 2.0, 3.0}, two_pole), Normalization::euclidean);
  EXPECT_NEAR(e.weights().squaredNorm(), 1.0, 1e-12);
  const auto c = build_surrogate(sample({0.0, 0.5, 2.0, 3.0}, two_pole), Normalization::constrained_sum);
  EXPECT_NEAR(std::abs(c.weights().sum() - 1.0), 0.0, 1e-10);
}

TEST(Surrogate, InactiveNodeNoLongerInterpolates)
{
  CVector q(3);
  q << 1.0, 0.0, 1.0;
  const BarycentricSurrogate s(SampleSet({0.0, 1.0, 2.0}, {col({1.0}), col({5.0}), col({3.0})}), q,
                               Normalization::as_given);
  EXPECT_EQ(s.active_nodes(), (std::vector<std::size_t>{0, 2}));
  EXPECT_FALSE(s.is_active(1));
  // (1/(1-0) + 3/(1-2)) / (1/1 + 1/(-1)) = -2 / 0: a pole, not the stored 5.
  EXPECT_THROW(s.evaluate(1.0), Error);
  EXPECT_NEAR(std::abs(s.evaluate(3.0)(0, 0) - 2.5), 0.0, 1e-14); // (1/3 + 3) / (1/3 + 1)
}

TEST(Surrogate, PoleProximitySignal)
{
  const auto s = three_node_surrogate();
  try
  {
    s.evaluate(1.0);
    FAIL() << "expected pole_proximity";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::pole_proximity);
  }
}

TEST(Surrogate, ExactnessForRationalData)
{
  // Four simple poles with independent vector residues, S = 5 samples.
  std::mt19937_64 rng(12);
  const std::vector<Complex> poles{Complex(0.2, 0.3), Complex(-0.5, 0.1), Complex(1.1, -0.4), Complex(0.0, -1.0)};
  const CMatrix residues = random_matrix(rng, 4, 4);
  auto u = [&](Complex z) {
    CMatrix v = CMatrix::Zero(4, 1);
    for (int k = 0; k < 4; ++k)
      v += residues.col(k) / (z - poles[k]);
    return v;
  };
  std::vector<Complex> nodes{-2.0, -1.0, 0.5, 2.0, 3.0};
  std::vector<CMatrix> values;
  for (Complex z : nodes)
    values.push_back(u(z));
  for (bool qr : {false, true})
  {
    const auto s = build_surrogate(SampleSet(nodes, values), Normalization::euclidean, qr);
    for (int i = 0; i < 50; ++i)
    {
      const Complex z = 2.0 * random_matrix(rng, 1, 1)(0, 0);
      const CMatrix exact = u(z);
      EXPECT_LE((s.evaluate(z) - exact).norm(), 1e-8 * exact.norm()) << "at " << z;
    }
  }
}

} // namespace
} // namespace mrinep

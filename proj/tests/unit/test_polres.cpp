// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "mrinep/error.hpp"
#include "mrinep/polres.hpp"
#include "test_util.hpp"

namespace mrinep
{
namespace
{

using mrinep::testing::random_matrix;

CMatrix col(std::initializer_list<Complex> v)
{
  CMatrix m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (Complex x : v)
    m(i++, 0) = x;
  return m;
}

BarycentricSurrogate explicit_surrogate(std::vector<Complex> nodes, std::vector<CMatrix> values,
                                        std::initializer_list<Complex> q)
{
  CVector w(static_cast<Eigen::Index>(q.size()));
  Eigen::Index i = 0;
  for (Complex x : q)
    w(i++) = x;
  return BarycentricSurrogate(SampleSet(std::move(nodes), std::move(values)), w, Normalization::as_given);
}

// u(z) = (1/(z-1), 1/(z+1)) at (0, 2, 3) with the exact weights.
BarycentricSurrogate three_node()
{
  std::vector<CMatrix> values;
  for (Complex z : {0.0, 2.0, 3.0})
    values.push_back(col({1.0 / (z - 1.0), 1.0 / (z + 1.0)}));
  return explicit_surrogate({0.0, 2.0, 3.0}, values, {-1.0 / 6, -1.5, 8.0 / 3});
}

// u(z) = 1/(z-1)^2 at (0, 2, 3). The scalar Gramian has rank one, so the
// weights are the exact ones: q_j = (z_j - 1)^2 / prod_{i != j} (z_j - z_i).
BarycentricSurrogate double_pole()
{
  const std::vector<Complex> z{0.0, 2.0, 3.0};
  std::vector<CMatrix> values;
  CVector q(3);
  for (int j = 0; j < 3; ++j)
  {
    values.push_back(col({1.0 / ((z[j] - 1.0) * (z[j] - 1.0))}));
    Complex prod = 1.0;
    for (int i = 0; i < 3; ++i)
      if (i != j)
        prod *= z[j] - z[i];
    q(j) = (z[j] - 1.0) * (z[j] - 1.0) / prod;
  }
  return BarycentricSurrogate(SampleSet(z, values), q, Normalization::as_given);
}

// Random rational data with `count` simple poles and independent residues, sampled at count + 1 nodes.
BarycentricSurrogate random_simple(std::mt19937_64 &rng, int count, std::vector<Complex> *poles_out)
{
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> poles;
  for (int k = 0; k < count; ++k)
    poles.emplace_back(unit(rng), 0.5 * unit(rng));
  const CMatrix residues = random_matrix(rng, count, count);
  std::vector<Complex> nodes;
  std::vector<CMatrix> values;
  for (int j = 0; j <= count; ++j)
  {
    const Complex z(-2.0 + 4.0 * j / count, 0.05 * unit(rng));
    CMatrix v = CMatrix::Zero(count, 1);
    for (int k = 0; k < count; ++k)
      v += residues.col(k) / (z - poles[k]);
    nodes.push_back(z);
    values.push_back(v);
  }
  if (poles_out)
    *poles_out = poles;
  return build_surrogate(SampleSet(nodes, values), Normalization::euclidean);
}

TEST(ClusterPoles, Examples)
{
  auto c = cluster_poles({5.0, 1.0, 1.0 + 1e-12}, 1e-9);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].size(), 2u);
  EXPECT_EQ(c[1], std::vector<Complex>{5.0});
  EXPECT_TRUE(cluster_poles({}, 1e-9).empty());
  // Links are measured as tol (1 + max|a|,|b|); chained gaps of 2e-9 link transitively.
  c = cluster_poles({2.0, 2.0 + 4e-9, 2.0 + 2e-9}, 3e-9 / 3.0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].size(), 3u);
  EXPECT_THROW(cluster_poles({1.0}, 0.0), Error);
}

TEST(FindPoles, TwoNodeQuarterWeights)
{
  const auto s = explicit_surrogate({1.0, -1.0}, {col({1.0}), col({1.0})}, {0.25, 0.75});
  const auto poles = find_poles(s);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_NEAR(std::abs(poles[0].pole - 0.5), 0.0, 1e-12);
  EXPECT_EQ(poles[0].order, 1);
}

TEST(FindPoles, ThreeNodeExample)
{
  const auto poles = find_poles(three_node());
  ASSERT_EQ(poles.size(), 2u);
  EXPECT_NEAR(std::abs(poles[0].pole + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(poles[1].pole - 1.0), 0.0, 1e-12);
  EXPECT_EQ(poles[0].order, 1);
  EXPECT_EQ(poles[1].order, 1);
}

TEST(FindPoles, TwoNodeHalfWeights)
{
  const auto s = explicit_surrogate({0.0, 2.0}, {col({-1.0}), col({1.0})}, {0.5, 0.5});
  const auto poles = find_poles(s);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_NEAR(std::abs(poles[0].pole - 1.0), 0.0, 1e-14);
}

TEST(FindPoles, ConstantDataHasNoPoles)
{
  const auto two = build_surrogate(SampleSet({0.0, 1.0}, {col({1.0, 2.0}), col({1.0, 2.0})}), Normalization::euclidean);
  EXPECT_TRUE(find_poles(two).empty());
  // With three nodes the weights are ambiguous; whatever pole appears is removable.
  const auto three = build_surrogate(
      SampleSet({0.0, 1.0, 2.0}, {col({1.0, 2.0}), col({1.0, 2.0}), col({1.0, 2.0})}), Normalization::euclidean);
  EXPECT_TRUE(three.weight_ambiguous());
  for (const auto &p : pole_residue_expansion(three))
    for (const auto &r : p.residues)
      EXPECT_LE(r.norm(), 1e-10 * three.values_norm());
}

TEST(SimpleResidue, Examples)
{
  const auto s = three_node();
  const CMatrix r1 = simple_residue(s, 1.0);
  EXPECT_LE((r1 - col({1.0, 0.0})).norm(), 1e-14);
  const CMatrix r2 = simple_residue(s, -1.0);
  EXPECT_LE((r2 - col({0.0, 1.0})).norm(), 1e-14);
  const auto t = explicit_surrogate({0.0, 2.0}, {col({-1.0}), col({1.0})}, {0.5, 0.5});
  EXPECT_NEAR(std::abs(simple_residue(t, 1.0)(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(SimpleResidue, DoublePoleIsRejected)
{
  try
  {
    simple_residue(double_pole(), 1.0);
    FAIL() << "expected near_singular";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::near_singular);
  }
}

TEST(LaurentResidues, SimplePoleFromQuadrature)
{
  const auto r = laurent_residues(three_node(), 1.0, 1, 0.3, 64);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_LE((r[0] - col({1.0, 0.0})).norm(), 1e-10);
}

TEST(LaurentResidues, DoublePole)
{
  const auto r = laurent_residues(double_pole(), 1.0, 2, 0.3, 64);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0](0, 0)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(r[1](0, 0) - 1.0), 0.0, 1e-8);
}

TEST(LaurentResidues, DoublePoleThroughTheFullPipeline)
{
  // Vector data (1/(z-1)^2, 1/(z-1)) has a unique minimal-norm weight vector.
  std::vector<CMatrix> values;
  for (Complex z : {0.0, 2.0, 3.0})
    values.push_back(col({1.0 / ((z - 1.0) * (z - 1.0)), 1.0 / (z - 1.0)}));
  const auto s = build_surrogate(SampleSet({0.0, 2.0, 3.0}, values), Normalization::euclidean);
  const auto poles = pole_residue_expansion(s);
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_NEAR(std::abs(poles[0].pole - 1.0), 0.0, 1e-6);
  EXPECT_EQ(poles[0].order, 2);
  ASSERT_EQ(poles[0].residues.size(), 2u);
  EXPECT_LE((poles[0].residues[0] - col({0.0, 1.0})).norm(), 1e-6);
  EXPECT_LE((poles[0].residues[1] - col({1.0, 0.0})).norm(), 1e-6);
}

TEST(LaurentResidues, EmptyAndInvalidRequests)
{
  EXPECT_TRUE(laurent_residues(three_node(), 1.0, 0, 0.3, 64).empty());
  EXPECT_THROW(laurent_residues(three_node(), 1.0, 2, 0.3, 8), Error);
  // Circle of radius 1.5 around 1 encloses the node at 2 and the pole at -1.
  EXPECT_THROW(laurent_residues(three_node(), 1.0, 1, 1.5, 64), Error);
  EXPECT_THROW(laurent_residues(three_node(), 1.0, 1, 0.5, 64, {1.2}), Error);
}

TEST(PoleResidue, SimpleAndQuadratureAgreeOnRandomSurrogates)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial)
  {
    const auto s = random_simple(rng, 2 + trial % 4, nullptr);
    const auto poles = find_poles(s);
    std::vector<Complex> locations;
    for (const auto &p : poles)
      locations.push_back(p.pole);
    for (const auto &p : poles)
    {
      ASSERT_EQ(p.order, 1);
      std::vector<Complex> others;
      for (Complex l : locations)
        if (l != p.pole)
          others.push_back(l);
      const CMatrix simple = simple_residue(s, p.pole);
      const CMatrix quad = laurent_residues(s, p.pole, 1, default_laurent_radius(s, p.pole, others), 64, others)[0];
      EXPECT_LE((simple - quad).norm(), 1e-8 * simple.norm());
    }
  }
}

TEST(PoleResidue, PoleCountBoundAndDeterminism)
{
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial)
  {
    std::vector<Complex> nodes;
    std::vector<CMatrix> values;
    const int s = 2 + trial % 7;
    for (int j = 0; j < s; ++j)
    {
      nodes.emplace_back(j, 0.0);
      values.push_back(random_matrix(rng, 3, 1));
    }
    const auto sur = build_surrogate(SampleSet(nodes, values), Normalization::euclidean);
    const auto a = pole_residue_expansion(sur), b = pole_residue_expansion(sur);
    int total = 0;
    for (const auto &p : a)
      total += p.order;
    EXPECT_LE(total, s - 1);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
      EXPECT_EQ(a[i].pole, b[i].pole);
      ASSERT_EQ(a[i].residues.size(), b[i].residues.size());
      for (std::size_t k = 0; k < a[i].residues.size(); ++k)
        EXPECT_TRUE(a[i].residues[k] == b[i].residues[k]);
    }
  }
}

TEST(PoleResidue, ExpansionRemovesTheSingularPart)
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial)
  {
    const auto s = random_simple(rng, 3, nullptr);
    const auto poles = pole_residue_expansion(s);
    for (const auto &p : poles)
    {
      std::vector<Complex> others;
      for (const auto &o : poles)
        if (o.pole != p.pole)
          others.push_back(o.pole);
      const double radius = 0.5 * default_laurent_radius(s, p.pole, others);
      double worst = 0.0;
      for (int i = 0; i < 16; ++i)
      {
        const Complex z = p.pole + radius * std::polar(1.0, 2.0 * M_PI * (i + 0.5) / 16.0);
        CMatrix rest = s.evaluate(z);
        for (std::size_t k = 0; k < p.residues.size(); ++k)
          rest -= p.residues[k] / std::pow(z - p.pole, static_cast<double>(k + 1));
        worst = std::max(worst, rest.norm());
      }
      EXPECT_LE(worst, 1e3 * s.values_norm());
    }
  }
}

TEST(PoleResidue, ScalingInvariance)
{
  std::mt19937_64 rng(24);
  const auto s = random_simple(rng, 3, nullptr);
  const BarycentricSurrogate t(s.samples(), CVector(Complex(0, 7) * s.weights()), Normalization::as_given);
  const auto a = pole_residue_expansion(s), b = pole_residue_expansion(t);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    EXPECT_LE(std::abs(a[i].pole - b[i].pole), 1e-12 * (1.0 + std::abs(a[i].pole)));
    EXPECT_LE((a[i].residues[0] - b[i].residues[0]).norm(), 1e-10 * a[i].residues[0].norm());
  }
}

TEST(PoleResidue, RecoversRandomPoles)
{
  std::mt19937_64 rng(25);
  std::vector<Complex> truth;
  const auto s = random_simple(rng, 4, &truth);
  const auto poles = find_poles(s);
  ASSERT_EQ(poles.size(), 4u);
  for (Complex p : truth)
  {
    double best = 1e300;
    for (const auto &q : poles)
      best = std::min(best, std::abs(q.pole - p));
    EXPECT_LE(best, 1e-8);
  }
}

} // namespace
} // namespace mrinep

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/mri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "mrinep/error.hpp"

namespace mrinep
{

namespace
{

double pairwise_diameter(const std::vector<Complex> &nodes)
{
  double diam = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      diam = std::max(diam, std::abs(nodes[i] - nodes[j]));
  return diam;
}

void check_distinct(const std::vector<Complex> &nodes)
{
  const double radius = 1e-14 * pairwise_diameter(nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      require(std::abs(nodes[i] - nodes[j]) > radius, "SampleSet: nodes must be pairwise distinct");
}

// Fixes the free unit phase of an eigen/singular vector: the entry of largest
// modulus (lowest index on ties) becomes real positive.
void fix_phase(CVector &q)
{
  Eigen::Index pivot = 0;
  for (Eigen::Index j = 1; j < q.size(); ++j)
    if (std::abs(q(j)) > std::abs(q(pivot)))
      pivot = j;
  if (std::abs(q(pivot)) > 0.0)
    q *= std::conj(q(pivot)) / std::abs(q(pivot));
}

void rescale_to_unit_sum(MriWeights &w)
{
  const Complex sum = w.q.sum();
  if (std::abs(sum) > 1e-10)
    w.q /= sum;
  else
    w.sum_unnormalizable = true;
}

} // namespace

SampleSet::SampleSet(std::vector<Complex> nodes, std::vector<CMatrix> values)
    : nodes_(std::move(nodes)), values_(std::move(values))
{
  require(nodes_.size() == values_.size(), "SampleSet: node/value count mismatch");
  require(!nodes_.empty(), "SampleSet: at least one sample required");
  for (const CMatrix &v : values_)
    require(v.rows() == values_.front().rows() && v.cols() == values_.front().cols() && v.size() > 0,
            "SampleSet: all value blocks must share one nonempty shape");
  check_distinct(nodes_);
}

void SampleSet::add(Complex node, CMatrix value)
{
  if (!values_.empty())
    require(value.rows() == rows() && value.cols() == cols(), "SampleSet::add: shape mismatch");
  nodes_.push_back(node);
  values_.push_back(std::move(value));
  try
  {
    check_distinct(nodes_);
  }
  catch (...)
  {
    nodes_.pop_back();
    values_.pop_back();
    throw;
  }
}

double SampleSet::diameter() const
{
  return pairwise_diameter(nodes_);
}

linalg::HermitianMatrix build_gramian(const SampleSet &samples)
{
  const auto s = static_cast<Eigen::Index>(samples.size());
  require(s >= 1, "build_gramian: empty sample set");
  CMatrix g = CMatrix::Zero(s, s);
  const auto &values = samples.values();
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i; j < s; ++j)
      g(i, j) = (values[i].array().conjugate() * values[j].array()).sum();
  return linalg::HermitianMatrix::from_upper(g);
}

MriWeights mri_weights(const linalg::HermitianMatrix &g, Normalization mode)
{
  require(g.order() >= 2, "mri_weights: at least two samples required");
  require(mode != Normalization::as_given, "mri_weights: as_given is not a weight-selection mode");
  MriWeights w;
  w.mode = mode;
  if (mode == Normalization::constrained_sum)
  {
    try
    {
      const CVector x = linalg::solve_hermitian(g, CVector::Ones(g.order()));
      w.q = x / x.sum();
      return w;
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::near_singular)
        throw;
      w.robust_fallback = true;
    }
  }

  const linalg::HermitianEig eig = linalg::hermitian_eig(g);
  w.q = eig.vectors.col(0);
  fix_phase(w.q);
  w.q.normalize();
  w.weight_ambiguous = (eig.values(1) - eig.values(0)) < ambiguity_gap * std::abs(g.trace());
  if (mode == Normalization::constrained_sum)
    rescale_to_unit_sum(w);
  return w;
}

MriWeights mri_weights_qr(const SampleSet &samples)
{
  const auto s = static_cast<Eigen::Index>(samples.size());
  require(s >= 2, "mri_weights_qr: at least two samples required");
  const Eigen::Index len = samples.rows() * samples.cols();
  CMatrix stacked(len, s);
  for (Eigen::Index j = 0; j < s; ++j)
    stacked.col(j) = samples.values()[j].reshaped();

  Eigen::HouseholderQR<CMatrix> qr(stacked);
  CMatrix r = CMatrix::Zero(s, s);
  const Eigen::Index kept = std::min(len, s);
  r.topRows(kept) = qr.matrixQR().topRows(kept).triangularView<Eigen::Upper>();

  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeFullV);
  const Eigen::VectorXd &sigma = svd.singularValues();
  MriWeights w;
  w.mode = Normalization::euclidean;
  w.q = svd.matrixV().col(s - 1);
  fix_phase(w.q);
  w.q.normalize();
  const double trace = sigma.squaredNorm();
  const double gap = sigma(s - 2) * sigma(s - 2) - sigma(s - 1) * sigma(s - 1);
  w.weight_ambiguous = gap < ambiguity_gap * trace;
  return w;
}

BarycentricSurrogate::BarycentricSurrogate(SampleSet samples, CVector weights, Normalization mode)
    : samples_(std::move(samples)), weights_(std::move(weights)), mode_(mode)
{
  require(static_cast<std::size_t>(weights_.size()) == samples_.size(),
          "BarycentricSurrogate: one weight per node required");
  require(weights_.cwiseAbs().maxCoeff() > 0.0, "BarycentricSurrogate: weights must not all vanish");
  init_geometry();
}

BarycentricSurrogate::BarycentricSurrogate(SampleSet samples, const MriWeights &weights)
    : BarycentricSurrogate(std::move(samples), weights.q, weights.mode)
{
  robust_fallback_ = weights.robust_fallback;
  weight_ambiguous_ = weights.weight_ambiguous;
}

void BarycentricSurrogate::init_geometry()
{
  diameter_ = samples_.diameter();
  coincidence_radius_ = 1e-14 * diameter_;
}

bool BarycentricSurrogate::is_active(std::size_t j) const
{
  return std::abs(weights_(static_cast<Eigen::Index>(j))) > 1e-14 * weights_.cwiseAbs().maxCoeff();
}

std::vector<std::size_t> BarycentricSurrogate::active_nodes() const
{
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < size(); ++j)
    if (is_active(j))
      active.push_back(j);
  return active;
}

std::optional<std::size_t> BarycentricSurrogate::coincident_node(Complex z) const
{
  const auto &z_nodes = nodes();
  for (std::size_t j = 0; j < z_nodes.size(); ++j)
    if (std::abs(z - z_nodes[j]) <= coincidence_radius_)
      return j;
  return std::nullopt;
}

double BarycentricSurrogate::values_norm() const
{
  double sq = 0.0;
  for (const CMatrix &v : values())
    sq += v.squaredNorm();
  return std::sqrt(sq);
}

Complex BarycentricSurrogate::denominator(Complex z) const
{
  if (coincident_node(z))
    fail(ErrorCode::node_coincidence, "denominator: evaluation point coincides with a node");
  return linalg::barycentric_denominator(nodes(), {weights_.data(), size()}, z);
}

Complex BarycentricSurrogate::denominator_derivative(Complex z) const
{
  if (coincident_node(z))
    fail(ErrorCode::node_coincidence, "denominator_derivative: evaluation point coincides with a node");
  return linalg::barycentric_denominator_derivative(nodes(), {weights_.data(), size()}, z);
}

CMatrix BarycentricSurrogate::numerator(Complex z) const
{
  if (coincident_node(z))
    fail(ErrorCode::node_coincidence, "numerator: evaluation point coincides with a node");
  CMatrix n = CMatrix::Zero(rows(), cols());
  for (std::size_t j = 0; j < size(); ++j)
    n += (weights_(static_cast<Eigen::Index>(j)) / (z - nodes()[j])) * values()[j];
  return n;
}

CMatrix BarycentricSurrogate::evaluate(Complex z) const
{
  std::optional<std::size_t> skip;
  if (const auto hit = coincident_node(z))
  {
    if (is_active(*hit))
      return values()[*hit];
    skip = hit; // an inactive node no longer interpolates; drop its 0/0 term
  }
  CMatrix n = CMatrix::Zero(rows(), cols());
  Complex d = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < size(); ++j)
  {
    if (skip && *skip == j)
      continue;
    const Complex term = weights_(static_cast<Eigen::Index>(j)) / (z - nodes()[j]);
    d += term;
    scale += std::abs(term);
    n += term * values()[j];
  }
  if (!(std::abs(d) > 4.0 * std::numeric_limits<double>::epsilon() * scale))
    fail(ErrorCode::pole_proximity, "evaluate: point is at a surrogate pole");
  return n / d;
}

BarycentricSurrogate build_surrogate(SampleSet samples, Normalization mode, bool use_qr)
{
  if (mode == Normalization::euclidean && use_qr)
  {
    const MriWeights w = mri_weights_qr(samples);
    return {std::move(samples), w};
  }
  const MriWeights w = mri_weights(build_gramian(samples), mode);
  return {std::move(samples), w};
}

} // namespace mrinep

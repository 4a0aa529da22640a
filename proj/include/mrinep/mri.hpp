// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "mrinep/linalg.hpp"
#include "mrinep/types.hpp"

// Minimal rational interpolation in barycentric form:
//
//   u~(z) = n(z) / d(z),  n(z) = sum_j q_j U_j / (z - z_j),  d(z) = sum_j q_j / (z - z_j).
namespace mrinep
{

/// Sampled values U(z_j) of a block-valued function, all of shape n x m.
class SampleSet
{
public:
  SampleSet() = default;
  SampleSet(std::vector<Complex> nodes, std::vector<CMatrix> values);

  /// Appends a sample; throws if the shape differs or the node is too close to an existing one.
  void add(Complex node, CMatrix value);

  std::size_t size() const { return nodes_.size(); }
  Eigen::Index rows() const { return values_.empty() ? 0 : values_.front().rows(); }
  Eigen::Index cols() const { return values_.empty() ? 0 : values_.front().cols(); }
  const std::vector<Complex> &nodes() const { return nodes_; }
  const std::vector<CMatrix> &values() const { return values_; }
  double diameter() const;

private:
  std::vector<Complex> nodes_;
  std::vector<CMatrix> values_;
};

enum class Normalization
{
  euclidean,       // sum |q_j|^2 = 1, smallest eigenvector of G
  constrained_sum, // sum q_j = 1, G^{-1} 1 / (1^H G^{-1} 1)
  as_given         // caller-supplied weights, stored unchanged
};

/// G_ij = <U_i, U_j> (Frobenius for blocks with more than one column).
linalg::HermitianMatrix build_gramian(const SampleSet &samples);

struct MriWeights
{
  CVector q;
  Normalization mode = Normalization::euclidean;
  bool robust_fallback = false;  // constrained_sum fell back to the eigenvector route
  bool weight_ambiguous = false; // smallest eigenvalue of G is (nearly) repeated
  bool sum_unnormalizable = false; // fallback weights have |sum q| <= 1e-10
};

/// Gap (relative to trace) below which the smallest eigenvector of G is reported as ambiguous.
inline constexpr double ambiguity_gap = 1e-12;

/// Minimal-norm barycentric weights from a Gramian of order >= 2.
MriWeights mri_weights(const linalg::HermitianMatrix &g, Normalization mode);

/// Same minimizer as mri_weights(build_gramian(samples), euclidean), computed from the
/// triangular factor of a QR decomposition of the stacked samples. The smallest
/// right singular vector of R is resolved to working precision instead of its square.
MriWeights mri_weights_qr(const SampleSet &samples);

class BarycentricSurrogate
{
public:
  BarycentricSurrogate() = default;
  BarycentricSurrogate(SampleSet samples, CVector weights, Normalization mode);
  BarycentricSurrogate(SampleSet samples, const MriWeights &weights);

  std::size_t size() const { return samples_.size(); }
  Eigen::Index rows() const { return samples_.rows(); }
  Eigen::Index cols() const { return samples_.cols(); }
  const std::vector<Complex> &nodes() const { return samples_.nodes(); }
  const std::vector<CMatrix> &values() const { return samples_.values(); }
  const SampleSet &samples() const { return samples_; }
  const CVector &weights() const { return weights_; }
  Normalization mode() const { return mode_; }
  bool robust_fallback() const { return robust_fallback_; }
  bool weight_ambiguous() const { return weight_ambiguous_; }

  /// Nodes with |q_j| > 1e-14 max|q|.
  std::vector<std::size_t> active_nodes() const;
  bool is_active(std::size_t j) const;

  /// Index of the node within the coincidence radius of z, if any.
  std::optional<std::size_t> coincident_node(Complex z) const;
  double coincidence_radius() const { return coincidence_radius_; }
  double diameter() const { return diameter_; }
  /// Frobenius norm of all stored values together.
  double values_norm() const;

  // The three evaluations below throw ErrorCode::node_coincidence at a node.
  Complex denominator(Complex z) const;
  Complex denominator_derivative(Complex z) const;
  CMatrix numerator(Complex z) const;

  /// n(z)/d(z); the stored block at an active node; throws ErrorCode::pole_proximity
  /// where d(z) vanishes to rounding.
  CMatrix evaluate(Complex z) const;

private:
  void init_geometry();

  SampleSet samples_;
  CVector weights_;
  Normalization mode_ = Normalization::as_given;
  bool robust_fallback_ = false;
  bool weight_ambiguous_ = false;
  double diameter_ = 0.0;
  double coincidence_radius_ = 0.0;
};

/// Builds the minimal rational interpolant of `samples`. `use_qr` selects the
/// QR route for euclidean weights.
BarycentricSurrogate build_surrogate(SampleSet samples, Normalization mode, bool use_qr = true);

} // namespace mrinep

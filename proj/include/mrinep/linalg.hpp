// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "mrinep/types.hpp"

// Small dense kernels. Dimensions here are the number of samples, never the
// problem dimension.
namespace mrinep::linalg
{

/// Hermitian matrix whose upper triangle is authoritative; the lower triangle
/// is always the conjugate mirror of the upper one.
class HermitianMatrix
{
public:
  HermitianMatrix() = default;

  /// Builds from the upper triangle of `m`; the lower triangle of `m` is ignored.
  static HermitianMatrix from_upper(const CMatrix &m);

  Eigen::Index order() const { return data_.rows(); }
  const CMatrix &matrix() const { return data_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }
  double trace() const;

private:
  CMatrix data_;
};

struct HermitianEig
{
  Eigen::VectorXd values; // ascending
  CMatrix vectors;        // orthonormal columns
};

HermitianEig hermitian_eig(const HermitianMatrix &g);

/// Reciprocal condition number below which `solve_hermitian` refuses to solve.
inline constexpr double near_singular_rcond = 1e-13;

/// Solves G x = b; throws ErrorCode::near_singular if rcond(G) < near_singular_rcond.
CVector solve_hermitian(const HermitianMatrix &g, const CVector &b);

/// d(z) = sum_j q_j / (z - z_j). No node-coincidence check.
Complex barycentric_denominator(std::span<const Complex> nodes, std::span<const Complex> weights,
                                Complex z);
/// d'(z) = -sum_j q_j / (z - z_j)^2.
Complex barycentric_denominator_derivative(std::span<const Complex> nodes,
                                           std::span<const Complex> weights, Complex z);

/// Finite eigenvalues of the arrowhead pencil
///
///   [0 q^T; 1 Z] v = lambda [0 0; 0 I] v,
///
/// i.e. the roots of d. The arrowhead is eliminated to an (S-1)x(S-1) pencil
/// (C Z P, C P) with P spanning {w : q^T w = 0} and C annihilating the ones
/// vector, which is then solved in shift-inverted form so that a degree drop
/// (sum q_j = 0, an eigenvalue at infinity) shows up as a vanishing eigenvalue.
/// Values are returned unpolished and unsorted except for a deterministic order.
std::vector<Complex> arrowhead_pole_eigs(std::span<const Complex> nodes,
                                         std::span<const Complex> weights);

struct NewtonResult
{
  Complex root;
  int iterations = 0;
  bool converged = false;
  bool no_progress = false; // root is the unchanged starting point
};

/// Newton iteration on d started from `start`. Converged when the Newton step
/// |d/d'| is at most tol * (1 + |lambda|).
NewtonResult newton_polish_root(std::span<const Complex> nodes, std::span<const Complex> weights,
                                Complex start, int max_iter = 100, double tol = 1e-14);

} // namespace mrinep::linalg

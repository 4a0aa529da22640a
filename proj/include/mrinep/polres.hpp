// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mrinep/mri.hpp"

namespace mrinep
{

/// One pole lambda of the surrogate with its Laurent coefficients:
///   u~(z) = s(z) + sum_{k=1}^{order} residues[k-1] / (z - lambda)^k  near lambda.
struct PoleReport
{
  Complex pole;
  int order = 1;
  std::vector<CMatrix> residues; // residues[k-1] multiplies (z - lambda)^{-k}
  double polish_displacement = 0.0;
  std::vector<Complex> cluster_members; // raw pencil eigenvalues merged into this pole
};

struct PoleOptions
{
  double tol_cluster = 1e-7;
  double newton_tol = 1e-14;
  int newton_max_iter = 100;
  int quadrature_points = 64;
};

/// Single-linkage clusters: a and b are linked when |a - b| <= tol (1 + max(|a|, |b|)).
/// Members of a cluster are sorted, clusters are ordered by their first member.
std::vector<std::vector<Complex>> cluster_poles(std::vector<Complex> raw, double tol_cluster);

/// Poles from the arrowhead pencil over the active nodes, Newton-polished and
/// clustered; order = cluster size. Residues are left empty.
std::vector<PoleReport> find_poles(const BarycentricSurrogate &surrogate, const PoleOptions &options = {});

/// r_1 = n(lambda) / d'(lambda) for a simple pole. Throws ErrorCode::near_singular
/// if d'(lambda) vanishes (use laurent_residues instead).
CMatrix simple_residue(const BarycentricSurrogate &surrogate, Complex lambda);

/// Laurent coefficients r_1..r_order from the M-point trapezoid rule on |z - lambda| = radius:
///   r_k = (1 / 2 pi i) \oint u~(z) (z - lambda)^{k-1} dz.
/// `other_poles` are excluded from the disk together with every node.
std::vector<CMatrix> laurent_residues(const BarycentricSurrogate &surrogate, Complex lambda, int order,
                                      double radius, int quadrature_points,
                                      const std::vector<Complex> &other_poles = {});

/// min(0.1 * distance to the nearest other pole or node, 1e-2 * node-set diameter).
double default_laurent_radius(const BarycentricSurrogate &surrogate, Complex lambda,
                              const std::vector<Complex> &other_poles);

/// find_poles followed by residue computation: simple_residue for order 1 (quadrature
/// as fallback), quadrature otherwise, demoting the order while the leading residue vanishes.
std::vector<PoleReport> pole_residue_expansion(const BarycentricSurrogate &surrogate,
                                               const PoleOptions &options = {});

} // namespace mrinep

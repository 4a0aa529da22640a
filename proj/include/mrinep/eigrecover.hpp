// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mrinep/greedy.hpp"
#include "mrinep/polres.hpp"

namespace mrinep
{

struct EigenpairEstimate
{
  Complex lambda;
  CVector eigenvector; // unit 2-norm
  double residual = 0.0; // |T(lambda) w|_2
  int order_index = 1;   // k of the residue r_k this estimate came from
  bool in_region = false;
  bool filtered = false;
  std::size_t source_pole = 0; // index into the pole list
};

struct RecoveryOptions
{
  PoleOptions poles;
  double tol_cluster = 1e-7;
  double tol_region = 1e-8; // relative to the segment length
};

/// |T(lambda) w|_2 from a single operator application.
double verify_residual(const NepProblem &problem, Complex lambda, const CVector &w);

/// Unit direction of a residue block: r / |r| for one column, the dominant left
/// singular vector otherwise.
CVector residue_direction(const CMatrix &residue);

/// Every (pole, residue) pair with a non-negligible residue becomes an estimate,
/// sorted by lambda. Estimates whose residual cannot be evaluated carry +inf.
std::vector<EigenpairEstimate> extract_eigenpairs(const BarycentricSurrogate &surrogate, const Region &region,
                                                  const NepProblem &problem, const RecoveryOptions &options = {},
                                                  std::vector<PoleReport> *poles = nullptr);

/// Flags all but the smallest-residual member of each cluster of nearby lambdas.
/// Entries are never removed; flags are recomputed from scratch.
void filter_spurious(std::vector<EigenpairEstimate> &estimates, double tol_cluster);

} // namespace mrinep

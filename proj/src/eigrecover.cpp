// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/eigrecover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/SVD>

#include "mrinep/error.hpp"

namespace mrinep
{

double verify_residual(const NepProblem &problem, Complex lambda, const CVector &w)
{
  require(w.size() == problem.dim(), "verify_residual: eigenvector has wrong length");
  return problem.apply(lambda, CMatrix(w)).norm();
}

CVector residue_direction(const CMatrix &residue)
{
  if (residue.cols() == 1)
    return residue.col(0) / residue.col(0).norm();
  Eigen::JacobiSVD<CMatrix> svd(residue, Eigen::ComputeThinU);
  CVector w = svd.matrixU().col(0);
  // Same phase convention as a single column: align with the first column.
  const Complex overlap = residue.col(0).dot(w);
  if (std::abs(overlap) > 0.0)
    w *= std::conj(overlap) / std::abs(overlap);
  return w / w.norm();
}

std::vector<EigenpairEstimate> extract_eigenpairs(const BarycentricSurrogate &surrogate, const Region &region,
                                                  const NepProblem &problem, const RecoveryOptions &options,
                                                  std::vector<PoleReport> *poles_out)
{
  PoleOptions pole_options = options.poles;
  pole_options.tol_cluster = options.tol_cluster;
  std::vector<PoleReport> poles = pole_residue_expansion(surrogate, pole_options);
  const double threshold = 1e-12 * surrogate.values_norm();
  const double region_margin = options.tol_region * region.length();

  std::vector<EigenpairEstimate> estimates;
  for (std::size_t p = 0; p < poles.size(); ++p)
  {
    const PoleReport &pole = poles[p];
    for (std::size_t k = 0; k < pole.residues.size(); ++k)
    {
      const CMatrix &r = pole.residues[k];
      if (!(r.norm() > threshold))
        continue;
      EigenpairEstimate e;
      e.lambda = pole.pole;
      e.eigenvector = residue_direction(r);
      e.order_index = static_cast<int>(k) + 1;
      e.in_region = region.distance(e.lambda) <= region_margin;
      e.source_pole = p;
      try
      {
        e.residual = verify_residual(problem, e.lambda, e.eigenvector);
      }
      catch (const Error &)
      {
        e.residual = std::numeric_limits<double>::infinity();
      }
      estimates.push_back(std::move(e));
    }
  }
  std::stable_sort(estimates.begin(), estimates.end(), [](const EigenpairEstimate &a, const EigenpairEstimate &b) {
    if (a.lambda != b.lambda)
      return complex_less(a.lambda, b.lambda);
    return a.order_index < b.order_index;
  });
  if (poles_out)
    *poles_out = std::move(poles);
  return estimates;
}

void filter_spurious(std::vector<EigenpairEstimate> &estimates, double tol_cluster)
{
  require(tol_cluster > 0.0, "filter_spurious: tolerance must be positive");
  std::vector<Complex> lambdas;
  for (const auto &e : estimates)
    lambdas.push_back(e.lambda);
  for (auto &e : estimates)
    e.filtered = false;

  // Single-linkage components over the estimate list.
  const std::size_t count = estimates.size();
  std::vector<std::size_t> component(count);
  for (std::size_t i = 0; i < count; ++i)
    component[i] = i;
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j)
      {
        const double scale = 1.0 + std::max(std::abs(lambdas[i]), std::abs(lambdas[j]));
        if (std::abs(lambdas[i] - lambdas[j]) <= tol_cluster * scale && component[i] != component[j])
        {
          const std::size_t c = std::min(component[i], component[j]);
          component[i] = component[j] = c;
          changed = true;
        }
      }
  }

  for (std::size_t c = 0; c < count; ++c)
  {
    std::optional<std::size_t> keep;
    for (std::size_t i = 0; i < count; ++i)
      if (component[i] == c && (!keep || estimates[i].residual < estimates[*keep].residual))
        keep = i;
    if (!keep)
      continue;
    for (std::size_t i = 0; i < count; ++i)
      if (component[i] == c && i != *keep)
        estimates[i].filtered = true;
  }
}

} // namespace mrinep

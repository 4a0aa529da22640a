// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mrinep/types.hpp"

namespace mrinep
{

/// A matrix-valued function T(z) of order n, accessed only through products and solves.
/// Implementations are immutable after construction and safe to call concurrently.
class NepProblem
{
public:
  virtual ~NepProblem() = default;

  virtual std::string name() const = 0;
  virtual Eigen::Index dim() const = 0;

  /// T(z) X for an n x m block X.
  virtual CMatrix apply(Complex z, const CMatrix &x) const = 0;

  /// X with T(z) X = B. Throws ErrorCode::solve_failed where T(z) is singular.
  virtual CMatrix solve(Complex z, const CMatrix &b) const = 0;

  /// Points or sets where T is not analytic, if any.
  virtual std::optional<std::string> analyticity_hint() const { return std::nullopt; }

  /// Right-hand side the problem is naturally posed with (a single column).
  virtual CMatrix default_rhs() const { return CMatrix::Ones(dim(), 1); }
};

/// T(z) = diag(z - p_1, ..., z - p_K, 1, ..., 1) of order n >= K. Its default
/// right-hand side (1,...,1,0,...,0) gives u(z) with residue e_j at p_j.
std::unique_ptr<NepProblem> make_diag_rational(std::vector<Complex> poles, Eigen::Index n);

/// T(z) = T0 + z T1.
std::unique_ptr<NepProblem> make_linear_pencil(CMatrix t0, CMatrix t1);

/// A pencil with T1 = I and a Gaussian T0 whose eigenvalues are kept at distance
/// >= `margin` from the real segment [lo, hi]; deterministic in `seed`.
std::unique_ptr<NepProblem> make_random_pencil(Eigen::Index n, std::uint64_t seed, double lo = 0.0,
                                               double hi = 1.0, double margin = 0.1);

/// T(z) = sin(z) I_n.
std::unique_ptr<NepProblem> make_scalar_sin(Eigen::Index n);

/// n x m block of independent standard normal entries (real), deterministic in `seed`.
CMatrix gaussian_block(Eigen::Index n, Eigen::Index m, std::uint64_t seed);

} // namespace mrinep

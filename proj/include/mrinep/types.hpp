// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <Eigen/Dense>

namespace mrinep
{

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
/// Dense complex block, column-major. Sample values are n x m blocks.
using CMatrix = Eigen::MatrixXcd;

/// Lexicographic order on (real, imag) used wherever output order must be deterministic.
inline bool complex_less(const Complex &a, const Complex &b)
{
  if (a.real() != b.real())
    return a.real() < b.real();
  return a.imag() < b.imag();
}

} // namespace mrinep

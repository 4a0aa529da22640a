// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "mrinep/types.hpp"

namespace mrinep::testing
{

inline CMatrix random_matrix(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
{
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline CVector random_unit(std::mt19937_64 &rng, Eigen::Index n)
{
  CVector v = random_matrix(rng, n, 1);
  return v / v.norm();
}

inline std::vector<double> uniform_sorted(std::mt19937_64 &rng, std::size_t count, double lo, double hi)
{
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<double> out(count);
  for (double &x : out)
    x = uniform(rng);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Complex> to_complex(const std::vector<double> &x) { return {x.begin(), x.end()}; }

} // namespace mrinep::testing

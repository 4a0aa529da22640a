// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "mrinep/error.hpp"

namespace mrinep
{

namespace
{

class DiagRational final : public NepProblem
{
public:
  DiagRational(std::vector<Complex> poles, Eigen::Index n) : poles_(std::move(poles)), n_(n) {}

  std::string name() const override { return "diag_rational"; }
  Eigen::Index dim() const override { return n_; }

  CMatrix apply(Complex z, const CMatrix &x) const override
  {
    require(x.rows() == n_, "diag_rational: block has wrong row count");
    CMatrix y = x;
    for (std::size_t j = 0; j < poles_.size(); ++j)
      y.row(static_cast<Eigen::Index>(j)) *= (z - poles_[j]);
    return y;
  }

  CMatrix solve(Complex z, const CMatrix &b) const override
  {
    require(b.rows() == n_, "diag_rational: block has wrong row count");
    CMatrix x = b;
    for (std::size_t j = 0; j < poles_.size(); ++j)
    {
      const Complex diag = z - poles_[j];
      if (diag == Complex(0.0))
        fail(ErrorCode::solve_failed, "diag_rational: T(z) is singular at a pole");
      x.row(static_cast<Eigen::Index>(j)) /= diag;
    }
    return x;
  }

  CMatrix default_rhs() const override
  {
    CMatrix v = CMatrix::Zero(n_, 1);
    v.topRows(static_cast<Eigen::Index>(poles_.size())).setOnes();
    return v;
  }

private:
  std::vector<Complex> poles_;
  Eigen::Index n_;
};

class LinearPencil final : public NepProblem
{
public:
  LinearPencil(CMatrix t0, CMatrix t1) : t0_(std::move(t0)), t1_(std::move(t1)) {}

  std::string name() const override { return "linear_pencil"; }
  Eigen::Index dim() const override { return t0_.rows(); }

  CMatrix apply(Complex z, const CMatrix &x) const override
  {
    require(x.rows() == dim(), "linear_pencil: block has wrong row count");
    return t0_ * x + z * (t1_ * x);
  }

  CMatrix solve(Complex z, const CMatrix &b) const override
  {
    require(b.rows() == dim(), "linear_pencil: block has wrong row count");
    const CMatrix t = t0_ + z * t1_;
    Eigen::PartialPivLU<CMatrix> lu(t);
    const double norm = t.cwiseAbs().maxCoeff();
    // rcond() misses exact zero pivots, so check those directly.
    const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(norm > 0.0) || !(pivot > 1e-15 * norm) || !(lu.rcond() > 1e-15))
      fail(ErrorCode::solve_failed, "linear_pencil: T(z) is singular");
    CMatrix x = lu.solve(b);
    if (!x.allFinite())
      fail(ErrorCode::solve_failed, "linear_pencil: solve produced non-finite values");
    return x;
  }

private:
  CMatrix t0_, t1_;
};

class ScalarSin final : public NepProblem
{
public:
  explicit ScalarSin(Eigen::Index n) : n_(n) {}

  std::string name() const override { return "scalar_sin"; }
  Eigen::Index dim() const override { return n_; }

  CMatrix apply(Complex z, const CMatrix &x) const override
  {
    require(x.rows() == n_, "scalar_sin: block has wrong row count");
    return std::sin(z) * x;
  }

  CMatrix solve(Complex z, const CMatrix &b) const override
  {
    require(b.rows() == n_, "scalar_sin: block has wrong row count");
    const Complex s = std::sin(z);
    if (!(std::abs(s) > 1e-15))
      fail(ErrorCode::solve_failed, "scalar_sin: T(z) is singular at a multiple of pi");
    return b / s;
  }

private:
  Eigen::Index n_;
};

} // namespace

std::unique_ptr<NepProblem> make_diag_rational(std::vector<Complex> poles, Eigen::Index n)
{
  require(!poles.empty(), "diag_rational: at least one pole required");
  require(n >= static_cast<Eigen::Index>(poles.size()), "diag_rational: dimension must be >= pole count");
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      require(poles[i] != poles[j], "diag_rational: poles must be distinct");
  return std::make_unique<DiagRational>(std::move(poles), n);
}

std::unique_ptr<NepProblem> make_linear_pencil(CMatrix t0, CMatrix t1)
{
  require(t0.rows() == t0.cols() && t0.rows() >= 1, "linear_pencil: T0 must be square");
  require(t1.rows() == t0.rows() && t1.cols() == t0.cols(), "linear_pencil: T1 must match T0");
  return std::make_unique<LinearPencil>(std::move(t0), std::move(t1));
}

CMatrix gaussian_block(Eigen::Index n, Eigen::Index m, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix b(n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      b(i, j) = normal(rng);
  return b;
}

std::unique_ptr<NepProblem> make_random_pencil(Eigen::Index n, std::uint64_t seed, double lo, double hi,
                                               double margin)
{
  require(n >= 1 && hi > lo && margin > 0.0, "random_pencil: invalid parameters");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt)
  {
    CMatrix t0(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        t0(i, j) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0 * static_cast<double>(n));
    // T(z) is singular at the eigenvalues of -T0.
    Eigen::ComplexEigenSolver<CMatrix> eig(-t0, false);
    bool separated = true;
    for (Eigen::Index i = 0; i < n && separated; ++i)
    {
      const Complex e = eig.eigenvalues()(i);
      const double nearest_re = std::clamp(e.real(), lo, hi);
      separated = std::abs(e - Complex(nearest_re, 0.0)) >= margin;
    }
    if (separated)
      return make_linear_pencil(std::move(t0), CMatrix::Identity(n, n));
  }
  fail(ErrorCode::invalid_argument, "random_pencil: could not draw a pencil separated from the segment");
}

std::unique_ptr<NepProblem> make_scalar_sin(Eigen::Index n)
{
  require(n >= 1, "scalar_sin: dimension must be positive");
  return std::make_unique<ScalarSin>(n);
}

} // namespace mrinep

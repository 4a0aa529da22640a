// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "mrinep/error.hpp"

namespace mrinep::linalg
{

HermitianMatrix HermitianMatrix::from_upper(const CMatrix &m)
{
  require(m.rows() == m.cols() && m.rows() >= 1, "HermitianMatrix: square matrix of order >= 1 required");
  HermitianMatrix h;
  h.data_ = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    h.data_(i, i) = Complex(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      h.data_(j, i) = std::conj(m(i, j));
  }
  return h;
}

double HermitianMatrix::trace() const
{
  return data_.diagonal().real().sum();
}

HermitianEig hermitian_eig(const HermitianMatrix &g)
{
  require(g.order() >= 1, "hermitian_eig: empty matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
  {
    // Eigen caps the implicit QL sweep at 30 iterations per eigenvalue.
    fail(ErrorCode::no_convergence, "hermitian_eig: no convergence within " +
                                        std::to_string(30 * g.order()) + " QL iterations");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CVector solve_hermitian(const HermitianMatrix &g, const CVector &b)
{
  require(b.size() == g.order(), "solve_hermitian: dimension mismatch");
  const HermitianEig eig = hermitian_eig(g);
  const double largest = eig.values.cwiseAbs().maxCoeff();
  const double smallest = eig.values.cwiseAbs().minCoeff();
  if (!(largest > 0.0) || smallest < near_singular_rcond * largest)
  {
    fail(ErrorCode::near_singular,
         "solve_hermitian: reciprocal condition " + std::to_string(largest > 0.0 ? smallest / largest : 0.0) +
             " below threshold");
  }
  CVector coeffs = eig.vectors.adjoint() * b;
  coeffs.array() /= eig.values.array().cast<Complex>();
  return eig.vectors * coeffs;
}

Complex barycentric_denominator(std::span<const Complex> nodes, std::span<const Complex> weights,
                                Complex z)
{
  Complex d = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    d += weights[j] / (z - nodes[j]);
  return d;
}

Complex barycentric_denominator_derivative(std::span<const Complex> nodes,
                                           std::span<const Complex> weights, Complex z)
{
  Complex dd = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
  {
    const Complex t = z - nodes[j];
    dd -= weights[j] / (t * t);
  }
  return dd;
}

namespace
{

double node_diameter(std::span<const Complex> nodes)
{
  double diam = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      diam = std::max(diam, std::abs(nodes[i] - nodes[j]));
  return diam;
}

// Relative size of d(sigma) against the magnitude of its terms; the shifted
// pencil C (Z - sigma) P is singular exactly when d(sigma) = 0.
double shift_quality(std::span<const Complex> nodes, std::span<const Complex> weights, Complex sigma)
{
  Complex d = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
  {
    const Complex term = weights[j] / (sigma - nodes[j]);
    d += term;
    scale += std::abs(term);
  }
  return scale > 0.0 ? std::abs(d) / scale : 0.0;
}

// Orthonormal basis of the Hermitian complement of x (all columns but the first
// of the Householder Q of x).
CMatrix complement_basis(const CVector &x)
{
  Eigen::HouseholderQR<CMatrix> qr{CMatrix(x)};
  CMatrix q = qr.householderQ();
  return q.rightCols(x.size() - 1);
}

} // namespace

std::vector<Complex> arrowhead_pole_eigs(std::span<const Complex> nodes, std::span<const Complex> weights)
{
  require(nodes.size() == weights.size() && !nodes.empty(), "arrowhead_pole_eigs: size mismatch");
  const auto size = static_cast<Eigen::Index>(nodes.size());
  double qmax = 0.0;
  for (const Complex &w : weights)
    qmax = std::max(qmax, std::abs(w));
  if (!(qmax > 0.0))
    fail(ErrorCode::invalid_argument, "arrowhead_pole_eigs: degenerate pencil (all weights zero)");
  if (size == 1)
    return {};

  CVector q(size), z(size);
  Complex center = 0.0;
  for (Eigen::Index j = 0; j < size; ++j)
  {
    q(j) = weights[j] / qmax;
    z(j) = nodes[j];
    center += nodes[j];
  }
  center /= static_cast<double>(size);
  double diam = node_diameter(nodes);
  if (!(diam > 0.0))
    diam = 1.0;

  // {w : q^T w = 0} is the Hermitian complement of conj(q).
  const CMatrix p = complement_basis(q.conjugate());
  const CMatrix c = complement_basis(CVector::Ones(size)).adjoint();
  const CMatrix b = c * p;
  const CMatrix a = c * z.asDiagonal() * p;

  static constexpr std::array<Complex, 6> offsets = {
      Complex(0.0, 0.5),   Complex(0.0, -0.5),  Complex(0.61, 0.37),
      Complex(-0.43, 0.71), Complex(0.29, -0.83), Complex(-0.77, -0.41)};
  Complex sigma = center + diam * offsets[0];
  double best = -1.0;
  for (const Complex &offset : offsets)
  {
    const Complex candidate = center + diam * offset;
    const double quality = shift_quality(nodes, weights, candidate);
    if (quality > best)
    {
      best = quality;
      sigma = candidate;
    }
  }

  // A y = lambda B y  <=>  B y = mu (A - sigma B) y,  mu = 1 / (lambda - sigma).
  const CMatrix shifted = a - sigma * b;
  const CMatrix m = shifted.fullPivLu().solve(b);
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::no_convergence, "arrowhead_pole_eigs: eigenvalue iteration did not converge");

  const double infinity_radius = 1e8 * diam;
  std::vector<Complex> poles;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
  {
    const Complex mu = solver.eigenvalues()(i);
    if (std::abs(mu) * infinity_radius <= 1.0)
      continue;
    const Complex lambda = sigma + 1.0 / mu;
    if (std::abs(lambda - center) > infinity_radius || !std::isfinite(lambda.real()) ||
        !std::isfinite(lambda.imag()))
      continue;
    poles.push_back(lambda);
  }
  std::sort(poles.begin(), poles.end(), complex_less);
  return poles;
}

NewtonResult newton_polish_root(std::span<const Complex> nodes, std::span<const Complex> weights,
                                Complex start, int max_iter, double tol)
{
  NewtonResult result{start, 0, false, false};
  Complex lambda = start;
  Complex best = start;
  double best_residual = std::abs(barycentric_denominator(nodes, weights, start));
  if (!std::isfinite(best_residual))
  {
    result.no_progress = true;
    return result;
  }
  if (best_residual == 0.0)
  {
    result.converged = true;
    return result;
  }

  for (int it = 0; it < max_iter; ++it)
  {
    const Complex d = barycentric_denominator(nodes, weights, lambda);
    const Complex dd = barycentric_denominator_derivative(nodes, weights, lambda);
    if (!(std::abs(dd) > std::numeric_limits<double>::min()) || !std::isfinite(std::abs(dd)))
      break;
    const Complex step = d / dd;
    if (std::abs(step) <= tol * (1.0 + std::abs(lambda)))
    {
      result.converged = true;
      break;
    }
    lambda -= step;
    result.iterations = it + 1;
    const double residual = std::abs(barycentric_denominator(nodes, weights, lambda));
    if (!std::isfinite(residual))
      break;
    if (residual < best_residual)
    {
      best_residual = residual;
      best = lambda;
    }
    else if (residual > 4.0 * best_residual)
    {
      // Rounding floor reached near a multiple root; keep the best iterate.
      break;
    }
    if (residual == 0.0)
    {
      result.converged = true;
      break;
    }
  }
  result.root = best;
  result.no_progress = (best == start) && !result.converged;
  if (best == start)
    result.iterations = 0;
  return result;
}

} // namespace mrinep::linalg

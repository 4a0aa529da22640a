// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <memory>
#include <numbers>
#include <vector>

#include <Eigen/SparseCore>

#include "mrinep/error.hpp"
#include "mrinep/problems.hpp"

// Parametric Helmholtz resonator. The neck width z enters through the mapping
//
//   phi_z(x, y) = (x, ((2+z)/4 + (2-z)/4 cos(pi x)) y)   for 0 < x < 2,
//
// identity elsewhere, from the fixed reference domain
// [-1/4, 5] x [-2, 2] minus the unit disks at (1, 2) and (1, -2).
namespace mrinep::helmholtz
{

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

inline bool in_neck(double x)
{
  return x > 0.0 && x < 2.0;
}

/// Vertical stretch (2+z)/4 + (2-z)/4 cos(pi x) in the neck, 1 elsewhere.
template <class Scalar> Scalar neck_scale(Scalar z, double x)
{
  if (!in_neck(x))
    return Scalar(1.0);
  return (Scalar(2.0) + z) / 4.0 + (Scalar(2.0) - z) / 4.0 * std::cos(std::numbers::pi * x);
}

template <class Scalar> using Mat2 = std::array<std::array<Scalar, 2>, 2>;

template <class Scalar> std::array<Scalar, 2> map_phi(Scalar z, Point p)
{
  return {Scalar(p.x), neck_scale(z, p.x) * p.y};
}

template <class Scalar> Mat2<Scalar> map_jacobian(Scalar z, Point p)
{
  Mat2<Scalar> j{{{Scalar(1.0), Scalar(0.0)}, {Scalar(0.0), Scalar(1.0)}}};
  if (in_neck(p.x))
  {
    j[1][0] = std::numbers::pi * (z - Scalar(2.0)) / 4.0 * std::sin(std::numbers::pi * p.x) * p.y;
    j[1][1] = neck_scale(z, p.x);
  }
  return j;
}

/// [a1 a2; a3 a4] = (J phi_z)^{-T}.
template <class Scalar> struct Coefficients
{
  Scalar a1, a2, a3, a4;
};

template <class Scalar> Coefficients<Scalar> map_coefficients(Scalar z, Point p)
{
  if (!in_neck(p.x))
    return {Scalar(1.0), Scalar(0.0), Scalar(0.0), Scalar(1.0)};
  const Scalar scale = neck_scale(z, p.x);
  if (!(std::abs(scale) > 1e-12))
    fail(ErrorCode::invalid_argument, "map_coefficients: mapping degenerates (vanishing Jacobian)");
  const Scalar a2 = std::numbers::pi * (Scalar(2.0) - z) / 4.0 * std::sin(std::numbers::pi * p.x) * p.y / scale;
  return {Scalar(1.0), a2, Scalar(0.0), Scalar(1.0) / scale};
}

struct ResonatorGeometry
{
  double x_min = -0.25;
  double x_max = 5.0;
  double y_min = -2.0;
  double y_max = 2.0;
  std::array<Point, 2> disk_centers{{{1.0, 2.0}, {1.0, -2.0}}};
  double disk_radius = 1.0;
  int nx = 84; // elements along x
  int ny = 64; // elements along y
  double wavenumber = 10.0;

  double hx() const { return (x_max - x_min) / nx; }
  double hy() const { return (y_max - y_min) / ny; }
};

enum class NodeTag
{
  interior,
  inlet,
  wall
};

/// Structured bilinear-quadrilateral mesh of the reference domain with staircase
/// disk cutouts (an element is removed iff its centroid lies inside a disk).
struct Mesh
{
  std::vector<Point> nodes;                 // used nodes only
  std::vector<NodeTag> tags;                // per node
  std::vector<int> dof;                     // per node, -1 on the wall
  std::vector<std::array<int, 4>> elements; // counter-clockwise from lower left
  std::vector<std::array<int, 2>> inlet_edges;
  int dof_count = 0;
};

Mesh build_mesh(const ResonatorGeometry &geometry);

/// Plain-text dump: node coordinates with tags, element connectivity, inlet edges.
void dump_mesh(const Mesh &mesh, std::ostream &out);

using SparseMatrix = Eigen::SparseMatrix<Complex>;

class HelmholtzResonator final : public NepProblem
{
public:
  explicit HelmholtzResonator(ResonatorGeometry geometry);

  std::string name() const override { return "helmholtz_resonator"; }
  Eigen::Index dim() const override { return mesh_.dof_count; }
  CMatrix apply(Complex z, const CMatrix &x) const override;
  CMatrix solve(Complex z, const CMatrix &b) const override;
  std::optional<std::string> analyticity_hint() const override;
  CMatrix default_rhs() const override { return inlet_load(); }

  /// Stiffness minus k^2 mass of the mapped weak form, wall nodes eliminated.
  SparseMatrix assemble(Complex z) const;
  /// Same discretization with the identity map.
  SparseMatrix assemble_unmapped() const;
  /// Neumann load of a unit inflow datum on the inlet.
  CMatrix inlet_load() const;

  const Mesh &mesh() const { return mesh_; }
  const ResonatorGeometry &geometry() const { return geometry_; }

private:
  template <class CoefficientFn> SparseMatrix assemble_with(CoefficientFn &&coefficients) const;

  ResonatorGeometry geometry_;
  Mesh mesh_;
};

std::unique_ptr<HelmholtzResonator> make_helmholtz_resonator(ResonatorGeometry geometry);

} // namespace mrinep::helmholtz

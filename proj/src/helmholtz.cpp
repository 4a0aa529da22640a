// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/helmholtz.hpp"

#include <ostream>
#include <string>

#include <Eigen/SparseLU>

namespace mrinep::helmholtz
{

namespace
{

// 3-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 3> gauss_points = {0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
constexpr std::array<double, 3> gauss_weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

bool inside_disk(const ResonatorGeometry &g, Point p)
{
  for (const Point &c : g.disk_centers)
  {
    const double dx = p.x - c.x, dy = p.y - c.y;
    if (dx * dx + dy * dy < g.disk_radius * g.disk_radius)
      return true;
  }
  return false;
}

struct Interpolant
{
  double x, y, weight;
  std::array<double, 4> value;
  std::array<double, 4> dx, dy; // reference-coordinate gradients
};

std::vector<Interpolant> reference_element(double hx, double hy)
{
  std::vector<Interpolant> rule;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
    {
      const double xi = gauss_points[a], eta = gauss_points[b];
      Interpolant q;
      q.x = xi * hx;
      q.y = eta * hy;
      q.weight = gauss_weights[a] * gauss_weights[b] * hx * hy;
      q.value = {(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
      q.dx = {-(1 - eta) / hx, (1 - eta) / hx, eta / hx, -eta / hx};
      q.dy = {-(1 - xi) / hy, -xi / hy, xi / hy, (1 - xi) / hy};
      rule.push_back(q);
    }
  return rule;
}

struct PointCoefficients
{
  Complex a2, a4, det;
};

} // namespace

Mesh build_mesh(const ResonatorGeometry &g)
{
  require(g.nx > 0 && g.ny > 0 && g.x_max > g.x_min && g.y_max > g.y_min, "resonator: invalid grid");
  require(2.0 / g.hx() >= 8.0 - 1e-12, "resonator: mesh too coarse, need at least 8 elements across the neck");
  const int nx = g.nx, ny = g.ny;
  auto grid_node = [nx](int i, int j) { return j * (nx + 1) + i; };

  std::vector<char> kept(static_cast<std::size_t>(nx) * ny, 0);
  auto is_kept = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && kept[static_cast<std::size_t>(j) * nx + i];
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
    {
      const Point centroid{g.x_min + (i + 0.5) * g.hx(), g.y_min + (j + 0.5) * g.hy()};
      kept[static_cast<std::size_t>(j) * nx + i] = !inside_disk(g, centroid);
    }

  const std::size_t grid_nodes = static_cast<std::size_t>(nx + 1) * (ny + 1);
  std::vector<int> used(grid_nodes, -1);
  std::vector<char> wall(grid_nodes, 0), inlet(grid_nodes, 0);
  std::vector<std::array<int, 4>> grid_elements;
  std::vector<std::array<int, 2>> grid_inlet_edges;

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
    {
      if (!is_kept(i, j))
        continue;
      const std::array<int, 4> corners = {grid_node(i, j), grid_node(i + 1, j), grid_node(i + 1, j + 1),
                                          grid_node(i, j + 1)};
      grid_elements.push_back(corners);
      // Edges: bottom, right, top, left with the neighbour across each.
      const std::array<std::array<int, 2>, 4> neighbours = {{{i, j - 1}, {i + 1, j}, {i, j + 1}, {i - 1, j}}};
      for (std::size_t e = 0; e < 4; ++e)
      {
        if (is_kept(neighbours[e][0], neighbours[e][1]))
          continue;
        const int n0 = corners[e], n1 = corners[(e + 1) % 4];
        if (e == 3 && i == 0)
        {
          inlet[n0] = inlet[n1] = 1;
          grid_inlet_edges.push_back({n0, n1});
        }
        else
          wall[n0] = wall[n1] = 1;
      }
    }

  Mesh mesh;
  for (const auto &element : grid_elements)
    for (int n : element)
      used[n] = 0;
  for (std::size_t n = 0; n < grid_nodes; ++n)
  {
    if (used[n] < 0)
      continue;
    used[n] = static_cast<int>(mesh.nodes.size());
    const int i = static_cast<int>(n % (nx + 1)), j = static_cast<int>(n / (nx + 1));
    mesh.nodes.push_back({g.x_min + i * g.hx(), g.y_min + j * g.hy()});
    const NodeTag tag = wall[n] ? NodeTag::wall : (inlet[n] ? NodeTag::inlet : NodeTag::interior);
    mesh.tags.push_back(tag);
    mesh.dof.push_back(tag == NodeTag::wall ? -1 : mesh.dof_count++);
  }
  for (const auto &element : grid_elements)
    mesh.elements.push_back({used[element[0]], used[element[1]], used[element[2]], used[element[3]]});
  for (const auto &edge : grid_inlet_edges)
    mesh.inlet_edges.push_back({used[edge[0]], used[edge[1]]});
  return mesh;
}

void dump_mesh(const Mesh &mesh, std::ostream &out)
{
  static constexpr const char *names[] = {"interior", "inlet", "wall"};
  out.precision(17);
  out << "nodes " << mesh.nodes.size() << '\n';
  for (std::size_t n = 0; n < mesh.nodes.size(); ++n)
    out << n << ' ' << mesh.nodes[n].x << ' ' << mesh.nodes[n].y << ' '
        << names[static_cast<int>(mesh.tags[n])] << '\n';
  out << "elements " << mesh.elements.size() << '\n';
  for (std::size_t e = 0; e < mesh.elements.size(); ++e)
  {
    const auto &el = mesh.elements[e];
    out << e << ' ' << el[0] << ' ' << el[1] << ' ' << el[2] << ' ' << el[3] << '\n';
  }
  out << "inlet_edges " << mesh.inlet_edges.size() << '\n';
  for (const auto &edge : mesh.inlet_edges)
    out << edge[0] << ' ' << edge[1] << '\n';
}

HelmholtzResonator::HelmholtzResonator(ResonatorGeometry geometry)
    : geometry_(geometry), mesh_(build_mesh(geometry_))
{
}

template <class CoefficientFn>
SparseMatrix HelmholtzResonator::assemble_with(CoefficientFn &&coefficients) const
{
  const std::vector<Interpolant> rule = reference_element(geometry_.hx(), geometry_.hy());
  const double k2 = geometry_.wavenumber * geometry_.wavenumber;
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(mesh_.elements.size() * 16);

  for (const auto &element : mesh_.elements)
  {
    const Point origin = mesh_.nodes[static_cast<std::size_t>(element[0])];
    std::array<std::array<Complex, 4>, 4> local{};
    for (const Interpolant &q : rule)
    {
      const PointCoefficients c = coefficients(Point{origin.x + q.x, origin.y + q.y});
      std::array<Complex, 4> gx, gy;
      for (std::size_t a = 0; a < 4; ++a)
      {
        gx[a] = q.dx[a] + c.a2 * q.dy[a];
        gy[a] = c.a4 * q.dy[a];
      }
      const Complex w = q.weight * c.det;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          local[a][b] += w * (gx[a] * gx[b] + gy[a] * gy[b] - k2 * q.value[a] * q.value[b]);
    }
    for (std::size_t a = 0; a < 4; ++a)
    {
      const int row = mesh_.dof[static_cast<std::size_t>(element[a])];
      if (row < 0)
        continue;
      for (std::size_t b = 0; b < 4; ++b)
      {
        const int col = mesh_.dof[static_cast<std::size_t>(element[b])];
        if (col >= 0)
          triplets.emplace_back(row, col, local[a][b]);
      }
    }
  }
  SparseMatrix t(mesh_.dof_count, mesh_.dof_count);
  t.setFromTriplets(triplets.begin(), triplets.end());
  t.makeCompressed();
  return t;
}

SparseMatrix HelmholtzResonator::assemble(Complex z) const
{
  return assemble_with([z](Point p) {
    const Complex det = neck_scale(z, p.x);
    if (!(std::abs(det) > 1e-8))
      fail(ErrorCode::invalid_argument,
           "helmholtz_resonator: mapping degenerates at z = " + std::to_string(z.real()) + "+" +
               std::to_string(z.imag()) + "i");
    const Coefficients<Complex> a = map_coefficients(z, p);
    return PointCoefficients{a.a2, a.a4, det};
  });
}

SparseMatrix HelmholtzResonator::assemble_unmapped() const
{
  return assemble_with([](Point) { return PointCoefficients{0.0, 1.0, 1.0}; });
}

CMatrix HelmholtzResonator::inlet_load() const
{
  CMatrix v = CMatrix::Zero(mesh_.dof_count, 1);
  const double half = 0.5 * geometry_.hy();
  for (const auto &edge : mesh_.inlet_edges)
    for (int n : edge)
      if (const int d = mesh_.dof[static_cast<std::size_t>(n)]; d >= 0)
        v(d, 0) += half;
  return v;
}

CMatrix HelmholtzResonator::apply(Complex z, const CMatrix &x) const
{
  require(x.rows() == dim(), "helmholtz_resonator: block has wrong row count");
  return assemble(z) * x;
}

CMatrix HelmholtzResonator::solve(Complex z, const CMatrix &b) const
{
  require(b.rows() == dim(), "helmholtz_resonator: block has wrong row count");
  const SparseMatrix t = assemble(z);
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(t);
  lu.factorize(t);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::solve_failed, "helmholtz_resonator: factorization failed: " + lu.lastErrorMessage());
  CMatrix x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite())
    fail(ErrorCode::solve_failed, "helmholtz_resonator: triangular solve failed");
  return x;
}

std::optional<std::string> HelmholtzResonator::analyticity_hint() const
{
  return "T(z) is analytic except on the real half-line z <= 0, where the neck mapping degenerates";
}

std::unique_ptr<HelmholtzResonator> make_helmholtz_resonator(ResonatorGeometry geometry)
{
  require(geometry.wavenumber >= 0.0, "resonator: wavenumber must be non-negative");
  return std::make_unique<HelmholtzResonator>(geometry);
}

} // namespace mrinep::helmholtz

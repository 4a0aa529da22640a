// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/polres.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "mrinep/error.hpp"

namespace mrinep
{

namespace
{

// Single-linkage clustering on indices into `values`, deterministic in the
// (real, imag) order of the values.
std::vector<std::vector<std::size_t>> cluster_indices(const std::vector<Complex> &values, double tol)
{
  const std::size_t count = values.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return complex_less(values[a], values[b]); });

  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b)
    {
      const Complex &x = values[order[a]];
      const Complex &y = values[order[b]];
      if (std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y))))
      {
        const std::size_t ra = find(a), rb = find(b);
        if (ra != rb)
          parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }

  // Roots are the smallest sorted position in their cluster, so walking the
  // sorted order yields clusters already ordered by first member.
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> slot(count, std::numeric_limits<std::size_t>::max());
  for (std::size_t a = 0; a < count; ++a)
  {
    const std::size_t root = find(a);
    if (slot[root] == std::numeric_limits<std::size_t>::max())
    {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].push_back(order[a]);
  }
  return clusters;
}

double distance_to_nearest(const std::vector<Complex> &points, Complex z)
{
  double best = std::numeric_limits<double>::infinity();
  for (const Complex &p : points)
    best = std::min(best, std::abs(p - z));
  return best;
}

} // namespace

std::vector<std::vector<Complex>> cluster_poles(std::vector<Complex> raw, double tol_cluster)
{
  require(tol_cluster > 0.0, "cluster_poles: tolerance must be positive");
  std::vector<std::vector<Complex>> clusters;
  for (const auto &members : cluster_indices(raw, tol_cluster))
  {
    auto &cluster = clusters.emplace_back();
    for (std::size_t i : members)
      cluster.push_back(raw[i]);
  }
  return clusters;
}

std::vector<PoleReport> find_poles(const BarycentricSurrogate &surrogate, const PoleOptions &options)
{
  std::vector<Complex> nodes, weights;
  for (std::size_t j : surrogate.active_nodes())
  {
    nodes.push_back(surrogate.nodes()[j]);
    weights.push_back(surrogate.weights()(static_cast<Eigen::Index>(j)));
  }
  if (nodes.size() < 2)
    return {};

  const std::vector<Complex> raw = linalg::arrowhead_pole_eigs(nodes, weights);
  std::vector<Complex> polished(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    polished[i] =
        linalg::newton_polish_root(nodes, weights, raw[i], options.newton_max_iter, options.newton_tol).root;

  std::vector<PoleReport> reports;
  for (const auto &members : cluster_indices(polished, options.tol_cluster))
  {
    PoleReport report;
    report.order = static_cast<int>(members.size());
    Complex mean = 0.0;
    for (std::size_t i : members)
    {
      mean += polished[i];
      report.cluster_members.push_back(raw[i]);
      report.polish_displacement = std::max(report.polish_displacement, std::abs(polished[i] - raw[i]));
    }
    report.pole = members.size() == 1 ? polished[members.front()] : mean / static_cast<double>(members.size());
    reports.push_back(std::move(report));
  }
  std::sort(reports.begin(), reports.end(),
            [](const PoleReport &a, const PoleReport &b) { return complex_less(a.pole, b.pole); });
  return reports;
}

CMatrix simple_residue(const BarycentricSurrogate &surrogate, Complex lambda)
{
  const Complex derivative = surrogate.denominator_derivative(lambda);
  double scale = 0.0;
  for (std::size_t j = 0; j < surrogate.size(); ++j)
    scale += std::abs(surrogate.weights()(static_cast<Eigen::Index>(j))) /
             std::norm(lambda - surrogate.nodes()[j]);
  if (!(std::abs(derivative) > 1e-14 * scale))
    fail(ErrorCode::near_singular, "simple_residue: d'(lambda) vanishes; the pole is not simple, use laurent_residues");
  return surrogate.numerator(lambda) / derivative;
}

double default_laurent_radius(const BarycentricSurrogate &surrogate, Complex lambda,
                              const std::vector<Complex> &other_poles)
{
  const double nearest = std::min(distance_to_nearest(other_poles, lambda),
                                  distance_to_nearest(surrogate.nodes(), lambda));
  return std::min(0.1 * nearest, 1e-2 * surrogate.diameter());
}

std::vector<CMatrix> laurent_residues(const BarycentricSurrogate &surrogate, Complex lambda, int order,
                                      double radius, int quadrature_points,
                                      const std::vector<Complex> &other_poles)
{
  if (order <= 0)
    return {};
  require(quadrature_points >= 8 * order, "laurent_residues: at least 8 quadrature points per residue");
  require(radius > 0.0, "laurent_residues: radius must be positive");
  const double nearest = std::min(distance_to_nearest(other_poles, lambda),
                                  distance_to_nearest(surrogate.nodes(), lambda));
  if (!(nearest > radius))
    fail(ErrorCode::invalid_argument, "laurent_residues: circle of radius " + std::to_string(radius) +
                                          " encloses another pole or a node; try radius " +
                                          std::to_string(0.5 * nearest));

  std::vector<CMatrix> residues(static_cast<std::size_t>(order),
                                CMatrix::Zero(surrogate.rows(), surrogate.cols()));
  const double m = static_cast<double>(quadrature_points);
  for (int i = 0; i < quadrature_points; ++i)
  {
    const Complex offset = std::polar(radius, 2.0 * std::numbers::pi * i / m);
    const CMatrix value = surrogate.evaluate(lambda + offset);
    Complex power = offset;
    for (int k = 0; k < order; ++k)
    {
      residues[static_cast<std::size_t>(k)] += power * value;
      power *= offset;
    }
  }
  for (CMatrix &r : residues)
    r /= m;
  return residues;
}

std::vector<PoleReport> pole_residue_expansion(const BarycentricSurrogate &surrogate, const PoleOptions &options)
{
  std::vector<PoleReport> reports = find_poles(surrogate, options);
  for (std::size_t p = 0; p < reports.size(); ++p)
  {
    PoleReport &report = reports[p];
    std::vector<Complex> others;
    for (std::size_t o = 0; o < reports.size(); ++o)
      if (o != p)
        others.push_back(reports[o].pole);

    if (report.order == 1)
    {
      try
      {
        report.residues = {simple_residue(surrogate, report.pole)};
        continue;
      }
      catch (const Error &)
      {
      }
    }
    const double radius = default_laurent_radius(surrogate, report.pole, others);
    report.residues = laurent_residues(surrogate, report.pole, report.order, radius,
                                       std::max(options.quadrature_points, 8 * report.order), others);
    double largest = 0.0;
    for (const CMatrix &r : report.residues)
      largest = std::max(largest, r.norm());
    while (report.residues.size() > 1 && !(report.residues.back().norm() > 1e-12 * largest))
      report.residues.pop_back();
    report.order = static_cast<int>(report.residues.size());
  }
  return reports;
}

} // namespace mrinep

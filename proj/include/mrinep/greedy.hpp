// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrinep/mri.hpp"
#include "mrinep/problems.hpp"

namespace mrinep
{

/// A segment of the complex plane sampled by an equispaced candidate grid
/// that includes both endpoints.
class Region
{
public:
  Region(Complex a, Complex b, std::size_t candidate_count = 501);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  bool is_real() const { return a_.imag() == 0.0 && b_.imag() == 0.0; }
  std::size_t candidate_count() const { return candidate_count_; }
  double length() const { return std::abs(b_ - a_); }
  double spacing() const { return length() / static_cast<double>(candidate_count_ - 1); }
  Complex candidate(std::size_t i) const;
  std::vector<Complex> candidates() const;
  /// Equispaced points including both endpoints.
  std::vector<Complex> grid(std::size_t count) const;
  double distance(Complex z) const;

private:
  Complex a_, b_;
  std::size_t candidate_count_;
};

/// Cap applied to the indicator at surrogate poles.
inline constexpr double indicator_cap = 1e300;

/// rho(z) = 1 / |d(z)|; 0 at a node, capped at a surrogate pole.
double indicator(const BarycentricSurrogate &surrogate, Complex z);

struct SamplePick
{
  std::size_t index = 0;
  Complex z;
  double indicator = 0.0;
};

/// Argmax of the indicator over the candidate grid, skipping candidates at a node
/// and those with `excluded[i]` set; lowest index wins ties.
SamplePick next_sample_point(const BarycentricSurrogate &surrogate, const Region &region,
                             const std::vector<bool> &excluded = {});

/// Frobenius norm of T(z) u~(z) - rhs; throws ErrorCode::pole_proximity at a surrogate pole.
double residual_norm(const NepProblem &problem, const BarycentricSurrogate &surrogate, Complex z,
                     const CMatrix &rhs);

enum class TraceEvent
{
  ok,
  offset, // solve at z* failed, sample moved to the nearest unused candidate
  suspect // |u(z*)| exceeded 1e14 |rhs|; z* is a suspected exact eigenvalue, sample moved
};

const char *to_string(TraceEvent event);

struct TraceRecord
{
  std::size_t iteration;  // 1-based, counts greedy additions only
  Complex z;              // where the sample was taken
  Complex requested;      // indicator argmax (differs from z after an offset)
  double indicator;       // indicator at the argmax
  double u_norm;          // Frobenius norm of u(z)
  double solve_seconds;
  TraceEvent event;
};

struct GreedyOptions
{
  std::size_t budget = 20;
  std::vector<Complex> initial_nodes; // empty: region endpoints
  Normalization mode = Normalization::euclidean;
  bool use_qr = true;
  std::optional<double> early_stop; // stop once the max indicator falls below this value
  /// Called with each argmax before it is sampled (diagnostics and tests).
  std::function<void(const BarycentricSurrogate &, const SamplePick &)> on_pick;
};

struct GreedyResult
{
  BarycentricSurrogate surrogate;
  std::vector<TraceRecord> trace;
  std::vector<double> sample_norms; // per node, in node order
  std::size_t solves = 0;
  bool partial = false;
  std::string abort_reason;
};

/// Greedy minimal-rational sampling of u(z) = T(z)^{-1} rhs over `region` until the
/// budget is spent. A failed solve at the chosen point moves the sample to the nearest
/// unused candidate; if that also fails, or no candidate is left, the loop stops and
/// returns a partial result.
GreedyResult greedy_loop(const NepProblem &problem, const CMatrix &rhs, const Region &region,
                         const GreedyOptions &options);

} // namespace mrinep

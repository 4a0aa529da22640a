// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mrinep/error.hpp"
#include "mrinep/linalg.hpp"

namespace mrinep
{

Region::Region(Complex a, Complex b, std::size_t candidate_count) : a_(a), b_(b), candidate_count_(candidate_count)
{
  require(a != b, "Region: endpoints must be distinct");
  require(candidate_count >= 3, "Region: at least 3 candidates required");
}

Complex Region::candidate(std::size_t i) const
{
  if (i + 1 == candidate_count_)
    return b_;
  const double t = static_cast<double>(i) / static_cast<double>(candidate_count_ - 1);
  return a_ + (b_ - a_) * t;
}

std::vector<Complex> Region::candidates() const
{
  return grid(candidate_count_);
}

std::vector<Complex> Region::grid(std::size_t count) const
{
  require(count >= 2, "Region::grid: at least 2 points required");
  std::vector<Complex> points(count);
  for (std::size_t i = 0; i < count; ++i)
    points[i] = (i + 1 == count) ? b_ : a_ + (b_ - a_) * (static_cast<double>(i) / static_cast<double>(count - 1));
  return points;
}

double Region::distance(Complex z) const
{
  const Complex dir = b_ - a_;
  const double t = std::clamp(((z - a_) * std::conj(dir)).real() / std::norm(dir), 0.0, 1.0);
  return std::abs(z - (a_ + dir * t));
}

double indicator(const BarycentricSurrogate &surrogate, Complex z)
{
  if (surrogate.coincident_node(z))
    return 0.0;
  const double magnitude = std::abs(surrogate.denominator(z));
  if (!(magnitude > 0.0) || 1.0 / magnitude > indicator_cap)
    return indicator_cap;
  return 1.0 / magnitude;
}

SamplePick next_sample_point(const BarycentricSurrogate &surrogate, const Region &region,
                             const std::vector<bool> &excluded)
{
  std::optional<SamplePick> best;
  for (std::size_t i = 0; i < region.candidate_count(); ++i)
  {
    if (i < excluded.size() && excluded[i])
      continue;
    const Complex z = region.candidate(i);
    if (surrogate.coincident_node(z))
      continue;
    const double rho = indicator(surrogate, z);
    if (!best || rho > best->indicator)
      best = SamplePick{i, z, rho};
  }
  if (!best)
    fail(ErrorCode::budget_exhausted, "next_sample_point: every candidate is a node or excluded");
  return *best;
}

double residual_norm(const NepProblem &problem, const BarycentricSurrogate &surrogate, Complex z,
                     const CMatrix &rhs)
{
  const CMatrix approx = surrogate.evaluate(z);
  return (problem.apply(z, approx) - rhs).norm();
}

const char *to_string(TraceEvent event)
{
  switch (event)
  {
  case TraceEvent::ok:
    return "ok";
  case TraceEvent::offset:
    return "offset";
  case TraceEvent::suspect:
    return "suspect";
  }
  return "ok";
}

namespace
{

struct SolveOutcome
{
  std::optional<CMatrix> value;
  TraceEvent failure = TraceEvent::ok;
  double seconds = 0.0;
  std::string message;
};

SolveOutcome try_solve(const NepProblem &problem, Complex z, const CMatrix &rhs, double rhs_norm)
{
  SolveOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try
  {
    CMatrix u = problem.solve(z, rhs);
    const double norm = u.norm();
    if (!std::isfinite(norm) || norm > 1e14 * rhs_norm)
    {
      outcome.failure = TraceEvent::suspect;
      outcome.message = "sample norm exceeds 1e14 |rhs|";
    }
    else
      outcome.value = std::move(u);
  }
  catch (const Error &e)
  {
    if (e.code() != ErrorCode::solve_failed)
      throw;
    outcome.failure = TraceEvent::offset;
    outcome.message = e.what();
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

} // namespace

GreedyResult greedy_loop(const NepProblem &problem, const CMatrix &rhs, const Region &region,
                         const GreedyOptions &options)
{
  require(rhs.rows() == problem.dim() && rhs.cols() >= 1, "greedy_loop: rhs shape does not match the problem");
  const std::vector<Complex> initial =
      options.initial_nodes.empty() ? std::vector<Complex>{region.a(), region.b()} : options.initial_nodes;
  require(initial.size() >= 2, "greedy_loop: at least two initial nodes required");
  require(options.budget >= initial.size(), "greedy_loop: budget smaller than the initial sample set");
  for (const Complex &z : initial)
    require(region.distance(z) <= 1e-12 * region.length(), "greedy_loop: initial node outside the region");

  const double rhs_norm = rhs.norm();
  GreedyResult result;
  SampleSet samples;
  for (const Complex &z : initial)
  {
    SolveOutcome outcome = try_solve(problem, z, rhs, rhs_norm);
    if (!outcome.value)
      fail(ErrorCode::solve_failed, "greedy_loop: initial sample failed: " + outcome.message);
    result.sample_norms.push_back(outcome.value->norm());
    samples.add(z, std::move(*outcome.value));
    ++result.solves;
  }

  std::vector<bool> excluded(region.candidate_count(), false);
  while (samples.size() < options.budget)
  {
    const BarycentricSurrogate surrogate = build_surrogate(samples, options.mode, options.use_qr);
    SamplePick pick;
    try
    {
      pick = next_sample_point(surrogate, region, excluded);
    }
    catch (const Error &e)
    {
      if (e.code() != ErrorCode::budget_exhausted)
        throw;
      result.partial = true;
      result.abort_reason = e.what();
      break;
    }
    if (options.early_stop && pick.indicator < *options.early_stop)
      break;
    if (options.on_pick)
      options.on_pick(surrogate, pick);

    TraceRecord record{result.trace.size() + 1, pick.z, pick.z, pick.indicator, 0.0, 0.0, TraceEvent::ok};
    SolveOutcome outcome = try_solve(problem, pick.z, rhs, rhs_norm);
    excluded[pick.index] = true;
    if (!outcome.value)
    {
      record.event = outcome.failure;
      // Nearest unused candidate; lowest index on ties.
      std::optional<std::size_t> fallback;
      for (std::size_t i = 0; i < region.candidate_count(); ++i)
      {
        if (excluded[i] || surrogate.coincident_node(region.candidate(i)))
          continue;
        if (!fallback || std::abs(region.candidate(i) - pick.z) < std::abs(region.candidate(*fallback) - pick.z))
          fallback = i;
      }
      if (fallback)
      {
        excluded[*fallback] = true;
        record.z = region.candidate(*fallback);
        outcome = try_solve(problem, record.z, rhs, rhs_norm);
      }
      if (!outcome.value)
      {
        result.partial = true;
        result.abort_reason = "solve failed at z* and at the offset candidate: " + outcome.message;
        break;
      }
    }
    record.u_norm = outcome.value->norm();
    record.solve_seconds = outcome.seconds;
    result.sample_norms.push_back(record.u_norm);
    samples.add(record.z, std::move(*outcome.value));
    ++result.solves;
    result.trace.push_back(record);
  }

  result.surrogate = build_surrogate(std::move(samples), options.mode, options.use_qr);
  return result;
}

} // namespace mrinep

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

// Batch front-end shared by the mrinep executable and the acceptance suite.
// Everything here goes through the C API in mrinep.h.

#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mrinep::app
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_partial = 3;

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  std::string problem;
  nlohmann::json problem_params = nlohmann::json::object();
  std::complex<double> region_a, region_b;
  std::size_t candidates = 501;
  std::size_t budget = 20;
  std::vector<std::complex<double>> initial_nodes; // resolved: endpoints when not given
  std::string rhs_kind = "problem";
  std::uint64_t rhs_seed = 0;
  std::size_t rhs_columns = 1;
  std::string mode = "euclidean";
  bool use_qr = true;
  std::optional<double> early_stop;
  double tol_cluster = 1e-7;
  double tol_region = 1e-8;
  double newton_tol = 1e-14;
  std::size_t validation_points = 101;
  std::vector<std::complex<double>> validation_extra;
  bool filtering = false;
  bool timing = false;
  std::filesystem::path output_dir = "mrinep_out";

  /// Every key with its effective value.
  nlohmann::json resolved() const;
};

/// Validates a parsed config; throws ConfigError.
RunConfig parse_config(const nlohmann::json &config);
/// Reads and validates a JSON config file; throws ConfigError.
RunConfig load_config(const std::filesystem::path &path);

/// Runs greedy sampling and eigenpair recovery; writes samples.csv, eigenpairs.csv,
/// trace.csv, surrogate.bin and resolved_config.json into config.output_dir.
/// Returns exit_ok, exit_partial or exit_failure.
int run_solve(const RunConfig &config, std::ostream &log);

/// Reloads surrogate.bin from run_dir and writes error.csv and estimator.csv there.
int run_validate(const RunConfig &config, const std::filesystem::path &run_dir, std::ostream &log);

std::string list_problems(bool as_json);

/// %.17g
std::string format_double(double x);

/// Worker threads for validation sweeps: MRINEP_THREADS if set and positive,
/// otherwise the hardware concurrency.
unsigned worker_threads();

} // namespace mrinep::app

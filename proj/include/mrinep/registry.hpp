// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "mrinep/problems.hpp"

namespace mrinep
{

/// Built-in problems by name, configured from a JSON object of parameters.
/// Unknown names or malformed parameters throw ErrorCode::invalid_argument.
std::unique_ptr<NepProblem> create_problem(const std::string &name, const nlohmann::json &params);

/// Registry listing: name, description and parameter schema of every built-in problem.
nlohmann::json problem_schemas();

/// Right-hand side by kind: "problem" (the problem's own), "inlet" (resonator only),
/// "ones", or "gaussian" (real standard normal, `columns` wide).
CMatrix make_rhs(const NepProblem &problem, const std::string &kind, std::uint64_t seed = 0,
                 Eigen::Index columns = 1);

} // namespace mrinep

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mrinep
{

/// Failure categories shared by the C++ core and the C API.
enum class ErrorCode
{
  invalid_argument = 1,
  near_singular,
  node_coincidence,
  pole_proximity,
  solve_failed,
  no_convergence,
  budget_exhausted,
  partial_run,
  io_error,
  internal
};

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
  throw Error(code, what);
}

inline void require(bool condition, const std::string &what)
{
  if (!condition)
    throw Error(ErrorCode::invalid_argument, what);
}

} // namespace mrinep

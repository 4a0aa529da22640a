// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mrinep/mri.hpp"

namespace mrinep
{

// Binary surrogate file, little-endian:
//   magic "MRISURR1" | u64 S | u64 n | u64 m | i32 mode | u8 robust_fallback | u8 weight_ambiguous
//   | S complex nodes | S complex weights | S blocks of n*m complex values, column-major.
// Complex numbers are stored as (re, im) float64 pairs.
void save_surrogate(const BarycentricSurrogate &surrogate, const std::string &path);
BarycentricSurrogate load_surrogate(const std::string &path);

} // namespace mrinep

// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/surrogate_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mrinep/error.hpp"

namespace mrinep
{

namespace
{

constexpr std::array<char, 8> magic = {'M', 'R', 'I', 'S', 'U', 'R', 'R', '1'};

template <class T> void put(std::ofstream &out, const T &value)
{
  out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <class T> T get(std::ifstream &in)
{
  T value{};
  in.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!in)
    fail(ErrorCode::io_error, "load_surrogate: truncated file");
  return value;
}

void put_complex(std::ofstream &out, const Complex *data, std::size_t count)
{
  out.write(reinterpret_cast<const char *>(data), static_cast<std::streamsize>(count * sizeof(Complex)));
}

void get_complex(std::ifstream &in, Complex *data, std::size_t count)
{
  in.read(reinterpret_cast<char *>(data), static_cast<std::streamsize>(count * sizeof(Complex)));
  if (!in)
    fail(ErrorCode::io_error, "load_surrogate: truncated file");
}

} // namespace

void save_surrogate(const BarycentricSurrogate &surrogate, const std::string &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    fail(ErrorCode::io_error, "save_surrogate: cannot open " + path);
  out.write(magic.data(), magic.size());
  put<std::uint64_t>(out, surrogate.size());
  put<std::uint64_t>(out, static_cast<std::uint64_t>(surrogate.rows()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(surrogate.cols()));
  put<std::int32_t>(out, static_cast<std::int32_t>(surrogate.mode()));
  put<std::uint8_t>(out, surrogate.robust_fallback());
  put<std::uint8_t>(out, surrogate.weight_ambiguous());
  put_complex(out, surrogate.nodes().data(), surrogate.size());
  put_complex(out, surrogate.weights().data(), surrogate.size());
  for (const CMatrix &v : surrogate.values())
    put_complex(out, v.data(), static_cast<std::size_t>(v.size()));
  if (!out)
    fail(ErrorCode::io_error, "save_surrogate: write failed for " + path);
}

BarycentricSurrogate load_surrogate(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::io_error, "load_surrogate: cannot open " + path);
  std::array<char, 8> header{};
  in.read(header.data(), header.size());
  if (!in || header != magic)
    fail(ErrorCode::io_error, "load_surrogate: not a surrogate file: " + path);
  const auto s = get<std::uint64_t>(in);
  const auto n = get<std::uint64_t>(in);
  const auto m = get<std::uint64_t>(in);
  const auto mode = get<std::int32_t>(in);
  MriWeights w;
  w.robust_fallback = get<std::uint8_t>(in) != 0;
  w.weight_ambiguous = get<std::uint8_t>(in) != 0;
  if (s == 0 || n == 0 || m == 0 || mode < 0 || mode > 2)
    fail(ErrorCode::io_error, "load_surrogate: corrupt header in " + path);
  w.mode = static_cast<Normalization>(mode);

  std::vector<Complex> nodes(s);
  get_complex(in, nodes.data(), s);
  w.q.resize(static_cast<Eigen::Index>(s));
  get_complex(in, w.q.data(), s);
  std::vector<CMatrix> values;
  for (std::uint64_t j = 0; j < s; ++j)
  {
    CMatrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    get_complex(in, v.data(), n * m);
    values.push_back(std::move(v));
  }
  return {SampleSet(std::move(nodes), std::move(values)), w};
}

} // namespace mrinep

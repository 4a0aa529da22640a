// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/registry.hpp"

#include "mrinep/error.hpp"
#include "mrinep/helmholtz.hpp"

namespace mrinep
{

namespace
{

using nlohmann::json;

Complex parse_complex(const json &value)
{
  if (value.is_number())
    return {value.get<double>(), 0.0};
  if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
    return {value[0].get<double>(), value[1].get<double>()};
  fail(ErrorCode::invalid_argument, "expected a number or a [re, im] pair, got " + value.dump());
}

CMatrix parse_matrix(const json &rows, const std::string &what)
{
  require(rows.is_array() && !rows.empty(), what + ": expected a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const json &row = rows[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n, what + ": matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = parse_complex(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

template <class T> T param(const json &params, const char *key, T fallback)
{
  if (!params.contains(key))
    return fallback;
  try
  {
    return params.at(key).get<T>();
  }
  catch (const json::exception &)
  {
    fail(ErrorCode::invalid_argument, std::string("parameter '") + key + "' has the wrong type");
  }
}

void check_keys(const json &params, std::initializer_list<const char *> allowed, const std::string &problem)
{
  require(params.is_object() || params.is_null(), problem + ": parameters must be an object");
  if (params.is_null())
    return;
  for (const auto &item : params.items())
  {
    bool known = false;
    for (const char *key : allowed)
      known = known || item.key() == key;
    require(known, problem + ": unknown parameter '" + item.key() + "'");
  }
}

} // namespace

std::unique_ptr<NepProblem> create_problem(const std::string &name, const json &params)
{
  if (name == "diag_rational")
  {
    check_keys(params, {"poles", "dim"}, name);
    require(params.contains("poles") && params["poles"].is_array(), "diag_rational: 'poles' array required");
    std::vector<Complex> poles;
    for (const json &p : params["poles"])
      poles.push_back(parse_complex(p));
    const auto dim = param<long>(params, "dim", static_cast<long>(poles.size()));
    return make_diag_rational(std::move(poles), dim);
  }
  if (name == "linear_pencil")
  {
    check_keys(params, {"T0", "T1", "n", "seed", "lo", "hi", "margin"}, name);
    if (params.contains("T0") || params.contains("T1"))
    {
      require(params.contains("T0") && params.contains("T1"), "linear_pencil: both T0 and T1 required");
      return make_linear_pencil(parse_matrix(params["T0"], "T0"), parse_matrix(params["T1"], "T1"));
    }
    return make_random_pencil(param<long>(params, "n", 8), param<std::uint64_t>(params, "seed", 1),
                              param<double>(params, "lo", 0.0), param<double>(params, "hi", 1.0),
                              param<double>(params, "margin", 0.1));
  }
  if (name == "scalar_sin")
  {
    check_keys(params, {"n"}, name);
    return make_scalar_sin(param<long>(params, "n", 1));
  }
  if (name == "helmholtz_resonator")
  {
    check_keys(params, {"nx", "ny", "k"}, name);
    helmholtz::ResonatorGeometry geometry;
    geometry.nx = param<int>(params, "nx", geometry.nx);
    geometry.ny = param<int>(params, "ny", geometry.ny);
    geometry.wavenumber = param<double>(params, "k", geometry.wavenumber);
    return helmholtz::make_helmholtz_resonator(geometry);
  }
  fail(ErrorCode::invalid_argument, "unknown problem '" + name + "'");
}

json problem_schemas()
{
  return json::array({
      {{"name", "diag_rational"},
       {"description", "T(z) = diag(z - p_1, ..., z - p_K, 1, ..., 1); known simple eigenpairs (p_j, e_j)"},
       {"params",
        {{"poles", {{"type", "array of number or [re, im]"}, {"required", true}}},
         {"dim", {{"type", "integer"}, {"default", "number of poles"}}}}}},
      {{"name", "linear_pencil"},
       {"description", "T(z) = T0 + z T1; explicit matrices or a seeded random pencil with T1 = I"},
       {"params",
        {{"T0", {{"type", "square array of number or [re, im]"}}},
         {"T1", {{"type", "square array of number or [re, im]"}}},
         {"n", {{"type", "integer"}, {"default", 8}}},
         {"seed", {{"type", "integer"}, {"default", 1}}},
         {"lo", {{"type", "number"}, {"default", 0.0}}},
         {"hi", {{"type", "number"}, {"default", 1.0}}},
         {"margin", {{"type", "number"}, {"default", 0.1}}}}}},
      {{"name", "scalar_sin"},
       {"description", "T(z) = sin(z) I_n; every eigenvector is shared by all eigenvalues"},
       {"params", {{"n", {{"type", "integer"}, {"default", 1}}}}}},
      {{"name", "helmholtz_resonator"},
       {"description", "Parametric Helmholtz resonator; z is the neck width, bilinear FEM on the reference domain"},
       {"params",
        {{"nx", {{"type", "integer"}, {"default", 84}}},
         {"ny", {{"type", "integer"}, {"default", 64}}},
         {"k", {{"type", "number"}, {"default", 10.0}}}}}},
  });
}

CMatrix make_rhs(const NepProblem &problem, const std::string &kind, std::uint64_t seed, Eigen::Index columns)
{
  require(columns >= 1, "rhs: at least one column required");
  if (kind == "problem")
    return problem.default_rhs();
  if (kind == "inlet")
  {
    const auto *resonator = dynamic_cast<const helmholtz::HelmholtzResonator *>(&problem);
    require(resonator != nullptr, "rhs: 'inlet' is only defined for helmholtz_resonator");
    return resonator->inlet_load();
  }
  if (kind == "ones")
    return CMatrix::Ones(problem.dim(), columns);
  if (kind == "gaussian")
    return gaussian_block(problem.dim(), columns, seed);
  fail(ErrorCode::invalid_argument, "rhs: unknown kind '" + kind + "'");
}

} // namespace mrinep

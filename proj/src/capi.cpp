// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrinep/mrinep.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "mrinep/eigrecover.hpp"
#include "mrinep/error.hpp"
#include "mrinep/greedy.hpp"
#include "mrinep/helmholtz.hpp"
#include "mrinep/registry.hpp"
#include "mrinep/surrogate_io.hpp"

using namespace mrinep;

struct mrinep_problem
{
  std::unique_ptr<NepProblem> impl;
  std::string name;
};

struct mrinep_surrogate
{
  BarycentricSurrogate impl;
};

struct mrinep_greedy_result
{
  GreedyResult impl;
  mrinep_surrogate surrogate;
};

struct mrinep_eigenpairs
{
  std::vector<EigenpairEstimate> estimates;
  std::vector<PoleReport> poles;
};

namespace
{

static_assert(sizeof(mrinep_complex) == sizeof(Complex));

thread_local std::string last_error;

mrinep_status to_status(ErrorCode code) { return static_cast<mrinep_status>(static_cast<int>(code)); }

template <class Fn> mrinep_status guarded(Fn &&fn)
{
  try
  {
    fn();
    last_error.clear();
    return MRINEP_OK;
  }
  catch (const Error &e)
  {
    last_error = e.what();
    return to_status(e.code());
  }
  catch (const nlohmann::json::exception &e)
  {
    last_error = std::string("invalid JSON: ") + e.what();
    return MRINEP_ERR_INVALID_ARGUMENT;
  }
  catch (const std::bad_alloc &)
  {
    last_error = "out of memory";
    return MRINEP_ERR_INTERNAL;
  }
  catch (const std::exception &e)
  {
    last_error = e.what();
    return MRINEP_ERR_INTERNAL;
  }
}

void need(const void *p, const char *what)
{
  if (!p)
    fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

Complex cx(mrinep_complex z) { return {z.re, z.im}; }
mrinep_complex cx(Complex z) { return {z.real(), z.imag()}; }

CMatrix read_block(const mrinep_complex *data, Eigen::Index rows, Eigen::Index cols)
{
  return Eigen::Map<const CMatrix>(reinterpret_cast<const Complex *>(data), rows, cols);
}

void write_block(const CMatrix &m, mrinep_complex *out)
{
  Eigen::Map<CMatrix>(reinterpret_cast<Complex *>(out), m.rows(), m.cols()) = m;
}

SampleSet read_samples(const mrinep_complex *nodes, size_t count, const mrinep_complex *values, size_t n,
                       size_t m)
{
  need(nodes, "nodes");
  need(values, "values");
  require(count >= 1 && n >= 1 && m >= 1, "sample set must be nonempty");
  std::vector<Complex> z(count);
  std::vector<CMatrix> u(count);
  const size_t block = n * m;
  for (size_t j = 0; j < count; ++j)
  {
    z[j] = cx(nodes[j]);
    u[j] = read_block(values + j * block, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  }
  return SampleSet(std::move(z), std::move(u));
}

Region read_region(const mrinep_region *region)
{
  need(region, "region");
  return Region(cx(region->a), cx(region->b), region->candidates);
}

Normalization read_mode(mrinep_normalization mode)
{
  switch (mode)
  {
  case MRINEP_NORM_EUCLIDEAN:
    return Normalization::euclidean;
  case MRINEP_NORM_CONSTRAINED_SUM:
    return Normalization::constrained_sum;
  case MRINEP_NORM_AS_GIVEN:
    return Normalization::as_given;
  }
  fail(ErrorCode::invalid_argument, "unknown normalization");
}

mrinep_problem *wrap(std::unique_ptr<NepProblem> p)
{
  auto *h = new mrinep_problem;
  h->name = p->name();
  h->impl = std::move(p);
  return h;
}

} // namespace

extern "C" {

const char *mrinep_version(void) { return "1.0.0"; }

const char *mrinep_status_string(mrinep_status status)
{
  switch (status)
  {
  case MRINEP_OK:
    return "ok";
  case MRINEP_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case MRINEP_ERR_NEAR_SINGULAR:
    return "near singular";
  case MRINEP_ERR_NODE_COINCIDENCE:
    return "node coincidence";
  case MRINEP_ERR_POLE_PROXIMITY:
    return "pole proximity";
  case MRINEP_ERR_SOLVE_FAILED:
    return "solve failed";
  case MRINEP_ERR_NO_CONVERGENCE:
    return "no convergence";
  case MRINEP_ERR_BUDGET_EXHAUSTED:
    return "budget exhausted";
  case MRINEP_ERR_PARTIAL_RUN:
    return "partial run";
  case MRINEP_ERR_IO:
    return "i/o error";
  case MRINEP_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *mrinep_last_error(void) { return last_error.c_str(); }

// ---- problems

mrinep_status mrinep_problem_create(const char *name, const char *params_json, mrinep_problem **out)
{
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = nullptr;
    nlohmann::json params = nlohmann::json::object();
    if (params_json && *params_json)
      params = nlohmann::json::parse(params_json);
    *out = wrap(create_problem(name, params));
  });
}

mrinep_status mrinep_problem_create_diag_rational(const mrinep_complex *poles, size_t count, size_t dim,
                                                  mrinep_problem **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    require(count == 0 || poles, "poles must not be NULL");
    std::vector<Complex> p(count);
    for (size_t i = 0; i < count; ++i)
      p[i] = cx(poles[i]);
    *out = wrap(make_diag_rational(std::move(p), static_cast<Eigen::Index>(dim)));
  });
}

mrinep_status mrinep_problem_create_linear_pencil(size_t n, const mrinep_complex *t0, const mrinep_complex *t1,
                                                  mrinep_problem **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(t0, "t0");
    need(t1, "t1");
    require(n >= 1, "pencil order must be positive");
    const auto k = static_cast<Eigen::Index>(n);
    *out = wrap(make_linear_pencil(read_block(t0, k, k), read_block(t1, k, k)));
  });
}

mrinep_status mrinep_problem_create_scalar_sin(size_t n, mrinep_problem **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = wrap(make_scalar_sin(static_cast<Eigen::Index>(n)));
  });
}

mrinep_status mrinep_problem_create_helmholtz(int nx, int ny, double wavenumber, mrinep_problem **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    helmholtz::ResonatorGeometry g;
    g.nx = nx;
    g.ny = ny;
    g.wavenumber = wavenumber;
    *out = wrap(helmholtz::make_helmholtz_resonator(g));
  });
}

void mrinep_problem_destroy(mrinep_problem *problem) { delete problem; }

size_t mrinep_problem_dim(const mrinep_problem *problem)
{
  return problem ? static_cast<size_t>(problem->impl->dim()) : 0;
}

const char *mrinep_problem_name(const mrinep_problem *problem) { return problem ? problem->name.c_str() : ""; }

mrinep_status mrinep_problem_rhs(const mrinep_problem *problem, const char *kind, uint64_t seed, size_t columns,
                                 mrinep_complex *out)
{
  return guarded([&] {
    need(problem, "problem");
    need(kind, "kind");
    need(out, "out");
    const CMatrix b = make_rhs(*problem->impl, kind, seed, static_cast<Eigen::Index>(columns));
    require(static_cast<size_t>(b.cols()) == columns,
            std::string("rhs kind '") + kind + "' has " + std::to_string(b.cols()) + " column(s)");
    write_block(b, out);
  });
}

mrinep_status mrinep_problem_solve(const mrinep_problem *problem, mrinep_complex z, const mrinep_complex *b,
                                   size_t columns, mrinep_complex *x)
{
  return guarded([&] {
    need(problem, "problem");
    need(b, "b");
    need(x, "x");
    require(columns >= 1, "at least one column required");
    write_block(problem->impl->solve(cx(z), read_block(b, problem->impl->dim(), static_cast<Eigen::Index>(columns))),
                x);
  });
}

mrinep_status mrinep_problem_apply(const mrinep_problem *problem, mrinep_complex z, const mrinep_complex *x,
                                   size_t columns, mrinep_complex *y)
{
  return guarded([&] {
    need(problem, "problem");
    need(x, "x");
    need(y, "y");
    require(columns >= 1, "at least one column required");
    write_block(problem->impl->apply(cx(z), read_block(x, problem->impl->dim(), static_cast<Eigen::Index>(columns))),
                y);
  });
}

mrinep_status mrinep_problem_dump_mesh(const mrinep_problem *problem, const char *path)
{
  return guarded([&] {
    need(problem, "problem");
    need(path, "path");
    const auto *resonator = dynamic_cast<const helmholtz::HelmholtzResonator *>(problem->impl.get());
    require(resonator != nullptr, "mesh dump is only defined for helmholtz_resonator");
    std::ofstream file(path);
    if (!file)
      fail(ErrorCode::io_error, std::string("cannot open '") + path + "' for writing");
    helmholtz::dump_mesh(resonator->mesh(), file);
    if (!file)
      fail(ErrorCode::io_error, std::string("write to '") + path + "' failed");
  });
}

mrinep_status mrinep_list_problems(int as_json, char *buf, size_t cap, size_t *needed)
{
  return guarded([&] {
    const nlohmann::json schemas = problem_schemas();
    std::string text;
    if (as_json)
      text = schemas.dump(2) + "\n";
    else
      for (const auto &s : schemas)
      {
        text += s["name"].get<std::string>() + "\n  " + s["description"].get<std::string>() + "\n";
        for (const auto &item : s["params"].items())
        {
          text += "    " + item.key() + " (" + item.value()["type"].get<std::string>() + ")";
          if (item.value().contains("default"))
            text += " default " + item.value()["default"].dump();
          if (item.value().value("required", false))
            text += " required";
          text += "\n";
        }
      }
    if (needed)
      *needed = text.size() + 1;
    if (buf && cap > 0)
    {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

// ---- surrogates

mrinep_status mrinep_surrogate_build(const mrinep_complex *nodes, size_t count, const mrinep_complex *values,
                                     size_t n, size_t m, mrinep_normalization mode, mrinep_surrogate **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const Normalization nm = read_mode(mode);
    require(nm != Normalization::as_given, "use mrinep_surrogate_from_weights for explicit weights");
    auto surrogate = build_surrogate(read_samples(nodes, count, values, n, m), nm);
    *out = new mrinep_surrogate{std::move(surrogate)};
  });
}

mrinep_status mrinep_surrogate_from_weights(const mrinep_complex *nodes, size_t count, const mrinep_complex *weights,
                                            const mrinep_complex *values, size_t n, size_t m, mrinep_surrogate **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(weights, "weights");
    SampleSet samples = read_samples(nodes, count, values, n, m);
    CVector q = read_block(weights, static_cast<Eigen::Index>(count), 1);
    *out = new mrinep_surrogate{BarycentricSurrogate(std::move(samples), std::move(q), Normalization::as_given)};
  });
}

void mrinep_surrogate_destroy(mrinep_surrogate *surrogate) { delete surrogate; }

size_t mrinep_surrogate_size(const mrinep_surrogate *s) { return s ? s->impl.size() : 0; }
size_t mrinep_surrogate_rows(const mrinep_surrogate *s) { return s ? static_cast<size_t>(s->impl.rows()) : 0; }
size_t mrinep_surrogate_cols(const mrinep_surrogate *s) { return s ? static_cast<size_t>(s->impl.cols()) : 0; }

int mrinep_surrogate_flags(const mrinep_surrogate *s)
{
  if (!s)
    return 0;
  return (s->impl.robust_fallback() ? MRINEP_FLAG_ROBUST_FALLBACK : 0) |
         (s->impl.weight_ambiguous() ? MRINEP_FLAG_WEIGHT_AMBIGUOUS : 0);
}

mrinep_status mrinep_surrogate_nodes(const mrinep_surrogate *s, mrinep_complex *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(out, "out");
    for (size_t j = 0; j < s->impl.size(); ++j)
      out[j] = cx(s->impl.nodes()[j]);
  });
}

mrinep_status mrinep_surrogate_weights(const mrinep_surrogate *s, mrinep_complex *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(out, "out");
    write_block(s->impl.weights(), out);
  });
}

mrinep_status mrinep_surrogate_eval(const mrinep_surrogate *s, mrinep_complex z, mrinep_complex *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(out, "out");
    write_block(s->impl.evaluate(cx(z)), out);
  });
}

mrinep_status mrinep_surrogate_denominator(const mrinep_surrogate *s, mrinep_complex z, mrinep_complex *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(out, "out");
    *out = cx(s->impl.denominator(cx(z)));
  });
}

mrinep_status mrinep_surrogate_indicator(const mrinep_surrogate *s, mrinep_complex z, double *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(out, "out");
    *out = indicator(s->impl, cx(z));
  });
}

mrinep_status mrinep_surrogate_residual_norm(const mrinep_surrogate *s, const mrinep_problem *problem,
                                             mrinep_complex z, const mrinep_complex *rhs, size_t columns,
                                             double *out)
{
  return guarded([&] {
    need(s, "surrogate");
    need(problem, "problem");
    need(rhs, "rhs");
    need(out, "out");
    *out = residual_norm(*problem->impl, s->impl, cx(z),
                         read_block(rhs, problem->impl->dim(), static_cast<Eigen::Index>(columns)));
  });
}

mrinep_status mrinep_next_sample_point(const mrinep_surrogate *s, const mrinep_region *region, size_t *index,
                                       mrinep_complex *z, double *ind)
{
  return guarded([&] {
    need(s, "surrogate");
    const SamplePick pick = next_sample_point(s->impl, read_region(region));
    if (index)
      *index = pick.index;
    if (z)
      *z = cx(pick.z);
    if (ind)
      *ind = pick.indicator;
  });
}

mrinep_status mrinep_surrogate_save(const mrinep_surrogate *s, const char *path)
{
  return guarded([&] {
    need(s, "surrogate");
    need(path, "path");
    save_surrogate(s->impl, path);
  });
}

mrinep_status mrinep_surrogate_load(const char *path, mrinep_surrogate **out)
{
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    *out = new mrinep_surrogate{load_surrogate(path)};
  });
}

// ---- greedy sampling

void mrinep_greedy_options_init(mrinep_greedy_options *options)
{
  if (!options)
    return;
  const GreedyOptions defaults;
  options->budget = defaults.budget;
  options->initial_nodes = nullptr;
  options->initial_count = 0;
  options->mode = MRINEP_NORM_EUCLIDEAN;
  options->use_qr = defaults.use_qr ? 1 : 0;
  options->early_stop_enabled = 0;
  options->early_stop = 0.0;
}

mrinep_status mrinep_greedy_run(const mrinep_problem *problem, const mrinep_complex *rhs, size_t columns,
                                const mrinep_region *region, const mrinep_greedy_options *options,
                                mrinep_greedy_result **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(problem, "problem");
    need(rhs, "rhs");
    need(options, "options");
    require(columns >= 1, "at least one rhs column required");
    GreedyOptions o;
    o.budget = options->budget;
    o.mode = read_mode(options->mode);
    o.use_qr = options->use_qr != 0;
    require(options->initial_count == 0 || options->initial_nodes, "initial_nodes must not be NULL");
    for (size_t i = 0; i < options->initial_count; ++i)
      o.initial_nodes.push_back(cx(options->initial_nodes[i]));
    if (options->early_stop_enabled)
      o.early_stop = options->early_stop;
    const CMatrix b = read_block(rhs, problem->impl->dim(), static_cast<Eigen::Index>(columns));
    auto result = std::make_unique<mrinep_greedy_result>();
    result->impl = greedy_loop(*problem->impl, b, read_region(region), o);
    result->surrogate.impl = result->impl.surrogate;
    const bool partial = result->impl.partial;
    const std::string reason = result->impl.abort_reason;
    *out = result.release();
    if (partial)
      fail(ErrorCode::partial_run, reason);
  });
}

void mrinep_greedy_destroy(mrinep_greedy_result *result) { delete result; }

const mrinep_surrogate *mrinep_greedy_surrogate(const mrinep_greedy_result *result)
{
  return result ? &result->surrogate : nullptr;
}

size_t mrinep_greedy_solves(const mrinep_greedy_result *result) { return result ? result->impl.solves : 0; }

size_t mrinep_greedy_trace_size(const mrinep_greedy_result *result)
{
  return result ? result->impl.trace.size() : 0;
}

mrinep_status mrinep_greedy_trace_record(const mrinep_greedy_result *result, size_t index, mrinep_trace_record *out)
{
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    require(index < result->impl.trace.size(), "trace index out of range");
    const TraceRecord &r = result->impl.trace[index];
    out->iteration = r.iteration;
    out->z = cx(r.z);
    out->requested = cx(r.requested);
    out->indicator = r.indicator;
    out->u_norm = r.u_norm;
    out->solve_seconds = r.solve_seconds;
    out->event = static_cast<mrinep_trace_event>(static_cast<int>(r.event));
  });
}

mrinep_status mrinep_greedy_sample_norm(const mrinep_greedy_result *result, size_t index, double *out)
{
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    require(index < result->impl.sample_norms.size(), "sample index out of range");
    *out = result->impl.sample_norms[index];
  });
}

const char *mrinep_greedy_abort_reason(const mrinep_greedy_result *result)
{
  return result ? result->impl.abort_reason.c_str() : "";
}

// ---- eigenpairs

void mrinep_recovery_options_init(mrinep_recovery_options *options)
{
  if (!options)
    return;
  const RecoveryOptions defaults;
  options->tol_cluster = defaults.tol_cluster;
  options->tol_region = defaults.tol_region;
  options->newton_tol = defaults.poles.newton_tol;
  options->filtering = 0;
}

mrinep_status mrinep_eigenpairs_extract(const mrinep_surrogate *s, const mrinep_region *region,
                                        const mrinep_problem *problem, const mrinep_recovery_options *options,
                                        mrinep_eigenpairs **out)
{
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(s, "surrogate");
    need(problem, "problem");
    RecoveryOptions o;
    bool filtering = true;
    if (options)
    {
      o.tol_cluster = options->tol_cluster;
      o.tol_region = options->tol_region;
      o.poles.newton_tol = options->newton_tol;
      filtering = options->filtering != 0;
    }
    auto e = std::make_unique<mrinep_eigenpairs>();
    e->estimates = extract_eigenpairs(s->impl, read_region(region), *problem->impl, o, &e->poles);
    if (filtering)
      filter_spurious(e->estimates, o.tol_cluster);
    *out = e.release();
  });
}

void mrinep_eigenpairs_destroy(mrinep_eigenpairs *eigenpairs) { delete eigenpairs; }

size_t mrinep_eigenpairs_count(const mrinep_eigenpairs *e) { return e ? e->estimates.size() : 0; }

mrinep_status mrinep_eigenpairs_info(const mrinep_eigenpairs *e, size_t index, mrinep_eigenpair_info *out)
{
  return guarded([&] {
    need(e, "eigenpairs");
    need(out, "out");
    require(index < e->estimates.size(), "eigenpair index out of range");
    const EigenpairEstimate &est = e->estimates[index];
    out->lambda = cx(est.lambda);
    out->residual = est.residual;
    out->order_index = est.order_index;
    out->in_region = est.in_region ? 1 : 0;
    out->filtered = est.filtered ? 1 : 0;
    out->source_pole = est.source_pole;
  });
}

mrinep_status mrinep_eigenpairs_vector(const mrinep_eigenpairs *e, size_t index, mrinep_complex *out)
{
  return guarded([&] {
    need(e, "eigenpairs");
    need(out, "out");
    require(index < e->estimates.size(), "eigenpair index out of range");
    write_block(e->estimates[index].eigenvector, out);
  });
}

mrinep_status mrinep_eigenpairs_filter(mrinep_eigenpairs *e, double tol_cluster)
{
  return guarded([&] {
    need(e, "eigenpairs");
    filter_spurious(e->estimates, tol_cluster);
  });
}

size_t mrinep_eigenpairs_pole_count(const mrinep_eigenpairs *e) { return e ? e->poles.size() : 0; }

mrinep_status mrinep_eigenpairs_pole(const mrinep_eigenpairs *e, size_t index, mrinep_pole_info *out)
{
  return guarded([&] {
    need(e, "eigenpairs");
    need(out, "out");
    require(index < e->poles.size(), "pole index out of range");
    const PoleReport &p = e->poles[index];
    out->pole = cx(p.pole);
    out->order = p.order;
    out->polish_displacement = p.polish_displacement;
    out->cluster_size = p.cluster_members.size();
  });
}

mrinep_status mrinep_verify_residual(const mrinep_problem *problem, mrinep_complex lambda, const mrinep_complex *w,
                                     double *out)
{
  return guarded([&] {
    need(problem, "problem");
    need(w, "w");
    need(out, "out");
    *out = verify_residual(*problem->impl, cx(lambda), read_block(w, problem->impl->dim(), 1));
  });
}

} // extern "C"

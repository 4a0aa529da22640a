// Copyright 2026 The mrinep Authors
// SPDX-License-Identifier: Apache-2.0

#include "app.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "mrinep/mrinep.h"

namespace mrinep::app
{

namespace
{

using nlohmann::json;
using cplx = std::complex<double>;

struct ProblemDeleter
{
  void operator()(mrinep_problem *p) const { mrinep_problem_destroy(p); }
};
struct SurrogateDeleter
{
  void operator()(mrinep_surrogate *p) const { mrinep_surrogate_destroy(p); }
};
struct GreedyDeleter
{
  void operator()(mrinep_greedy_result *p) const { mrinep_greedy_destroy(p); }
};
struct EigenpairsDeleter
{
  void operator()(mrinep_eigenpairs *p) const { mrinep_eigenpairs_destroy(p); }
};
using Problem = std::unique_ptr<mrinep_problem, ProblemDeleter>;
using Surrogate = std::unique_ptr<mrinep_surrogate, SurrogateDeleter>;
using Greedy = std::unique_ptr<mrinep_greedy_result, GreedyDeleter>;
using Eigenpairs = std::unique_ptr<mrinep_eigenpairs, EigenpairsDeleter>;

// Failure of a library call outside config validation.
struct RunError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void check(mrinep_status status, const std::string &what)
{
  if (status != MRINEP_OK)
    throw RunError(what + ": " + mrinep_status_string(status) + ": " + mrinep_last_error());
}

mrinep_complex to_c(cplx z) { return {z.real(), z.imag()}; }
cplx from_c(mrinep_complex z) { return {z.re, z.im}; }

json complex_json(cplx z)
{
  if (z.imag() == 0.0)
    return z.real();
  return json::array({z.real(), z.imag()});
}

cplx parse_complex(const json &v, const std::string &key)
{
  if (v.is_number())
    return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(key + ": expected a number or a [re, im] pair");
}

std::vector<cplx> parse_points(const json &v, const std::string &key)
{
  if (!v.is_array())
    throw ConfigError(key + ": expected an array of points");
  std::vector<cplx> out;
  for (const json &p : v)
    out.push_back(parse_complex(p, key));
  return out;
}

void check_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
{
  if (!obj.is_object())
    throw ConfigError(where + ": expected an object");
  for (const auto &item : obj.items())
  {
    bool known = false;
    for (const char *k : allowed)
      known = known || item.key() == k;
    if (!known)
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

template <class T> T get_or(const json &obj, const char *key, T fallback, const std::string &where)
{
  if (!obj.contains(key))
    return fallback;
  try
  {
    return obj.at(key).get<T>();
  }
  catch (const json::exception &)
  {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::size_t get_count(const json &obj, const char *key, std::size_t fallback, const std::string &where)
{
  if (!obj.contains(key))
    return fallback;
  const json &v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

double get_tolerance(const json &obj, const char *key, double fallback)
{
  const double t = get_or<double>(obj, key, fallback, "tolerances");
  if (!(t > 0.0) || !std::isfinite(t))
    throw ConfigError(std::string("tolerances.") + key + ": must be positive");
  return t;
}

mrinep_region region_of(const RunConfig &c) { return {to_c(c.region_a), to_c(c.region_b), c.candidates}; }

Problem make_problem(const RunConfig &c)
{
  mrinep_problem *p = nullptr;
  const std::string params = c.problem_params.dump();
  const mrinep_status status = mrinep_problem_create(c.problem.c_str(), params.c_str(), &p);
  if (status == MRINEP_ERR_INVALID_ARGUMENT)
    throw ConfigError(std::string("problem: ") + mrinep_last_error());
  check(status, "problem");
  return Problem(p);
}

std::vector<mrinep_complex> make_rhs(const RunConfig &c, const mrinep_problem *p)
{
  std::vector<mrinep_complex> rhs(mrinep_problem_dim(p) * c.rhs_columns);
  const mrinep_status status = mrinep_problem_rhs(p, c.rhs_kind.c_str(), c.rhs_seed, c.rhs_columns, rhs.data());
  if (status == MRINEP_ERR_INVALID_ARGUMENT)
    throw ConfigError(std::string("rhs: ") + mrinep_last_error());
  check(status, "rhs");
  return rhs;
}

std::ofstream open_csv(const std::filesystem::path &path, const char *header)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw RunError("cannot open '" + path.string() + "' for writing");
  out << header << '\n';
  return out;
}

void close_csv(std::ofstream &out, const std::filesystem::path &path)
{
  out.close();
  if (!out)
    throw RunError("write to '" + path.string() + "' failed");
}

} // namespace

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

unsigned worker_threads()
{
  if (const char *env = std::getenv("MRINEP_THREADS"))
  {
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0)
      return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json RunConfig::resolved() const
{
  json nodes = json::array();
  for (cplx z : initial_nodes)
    nodes.push_back(complex_json(z));
  json extra = json::array();
  for (cplx z : validation_extra)
    extra.push_back(complex_json(z));
  json out = {
      {"problem", {{"name", problem}, {"params", problem_params}}},
      {"region", {{"a", complex_json(region_a)}, {"b", complex_json(region_b)}, {"candidates", candidates}}},
      {"budget", budget},
      {"initial_nodes", nodes},
      {"rhs", {{"kind", rhs_kind}, {"seed", rhs_seed}, {"columns", rhs_columns}}},
      {"mode", mode},
      {"use_qr", use_qr},
      {"early_stop", early_stop ? json(*early_stop) : json(nullptr)},
      {"tolerances", {{"tol_cluster", tol_cluster}, {"tol_region", tol_region}, {"newton_tol", newton_tol}}},
      {"validation_points", validation_points},
      {"validation_extra", extra},
      {"filtering", filtering},
      {"timing", timing},
      {"output_dir", output_dir.string()},
  };
  return out;
}

RunConfig parse_config(const json &cfg)
{
  check_keys(cfg,
             {"problem", "region", "budget", "initial_nodes", "rhs", "mode", "use_qr", "early_stop", "tolerances",
              "validation_points", "validation_extra", "filtering", "timing", "output_dir"},
             "config");
  RunConfig c;

  if (!cfg.contains("problem"))
    throw ConfigError("problem: required");
  const json &problem = cfg["problem"];
  if (problem.is_string())
    c.problem = problem.get<std::string>();
  else
  {
    check_keys(problem, {"name", "params"}, "problem");
    if (!problem.contains("name") || !problem["name"].is_string())
      throw ConfigError("problem.name: required string");
    c.problem = problem["name"].get<std::string>();
    if (problem.contains("params"))
    {
      if (!problem["params"].is_object())
        throw ConfigError("problem.params: expected an object");
      c.problem_params = problem["params"];
    }
  }

  if (!cfg.contains("region"))
    throw ConfigError("region: required");
  const json &region = cfg["region"];
  check_keys(region, {"a", "b", "candidates"}, "region");
  if (!region.contains("a") || !region.contains("b"))
    throw ConfigError("region: both endpoints 'a' and 'b' required");
  c.region_a = parse_complex(region["a"], "region.a");
  c.region_b = parse_complex(region["b"], "region.b");
  if (c.region_a == c.region_b)
    throw ConfigError("region: endpoints must differ");
  c.candidates = get_count(region, "candidates", c.candidates, "region");
  if (c.candidates < 3)
    throw ConfigError("region.candidates: at least 3 required");

  if (!cfg.contains("budget"))
    throw ConfigError("budget: required");
  c.budget = get_count(cfg, "budget", 0, "config");

  if (cfg.contains("initial_nodes"))
    c.initial_nodes = parse_points(cfg["initial_nodes"], "initial_nodes");
  else
    c.initial_nodes = {c.region_a, c.region_b};
  if (c.initial_nodes.size() < 2)
    throw ConfigError("initial_nodes: at least 2 required");
  if (c.budget < c.initial_nodes.size())
    throw ConfigError("budget: must be at least the number of initial nodes");

  if (cfg.contains("rhs"))
  {
    const json &rhs = cfg["rhs"];
    if (rhs.is_string())
      c.rhs_kind = rhs.get<std::string>();
    else
    {
      check_keys(rhs, {"kind", "seed", "columns"}, "rhs");
      c.rhs_kind = get_or<std::string>(rhs, "kind", c.rhs_kind, "rhs");
      c.rhs_seed = get_or<std::uint64_t>(rhs, "seed", c.rhs_seed, "rhs");
      c.rhs_columns = get_count(rhs, "columns", c.rhs_columns, "rhs");
    }
    if (c.rhs_kind != "problem" && c.rhs_kind != "inlet" && c.rhs_kind != "ones" && c.rhs_kind != "gaussian")
      throw ConfigError("rhs.kind: one of problem, inlet, ones, gaussian");
    if (c.rhs_columns < 1)
      throw ConfigError("rhs.columns: at least 1 required");
    if ((c.rhs_kind == "problem" || c.rhs_kind == "inlet") && c.rhs_columns != 1)
      throw ConfigError("rhs.columns: kind '" + c.rhs_kind + "' has a single column");
  }

  c.mode = get_or<std::string>(cfg, "mode", c.mode, "config");
  if (c.mode != "euclidean" && c.mode != "constrained_sum")
    throw ConfigError("mode: one of euclidean, constrained_sum");
  c.use_qr = get_or<bool>(cfg, "use_qr", c.use_qr, "config");
  if (cfg.contains("early_stop") && !cfg["early_stop"].is_null())
  {
    const double e = get_or<double>(cfg, "early_stop", 0.0, "config");
    if (!(e > 0.0))
      throw ConfigError("early_stop: must be positive");
    c.early_stop = e;
  }

  if (cfg.contains("tolerances"))
  {
    const json &tol = cfg["tolerances"];
    check_keys(tol, {"tol_cluster", "tol_region", "newton_tol"}, "tolerances");
    c.tol_cluster = get_tolerance(tol, "tol_cluster", c.tol_cluster);
    c.tol_region = get_tolerance(tol, "tol_region", c.tol_region);
    c.newton_tol = get_tolerance(tol, "newton_tol", c.newton_tol);
  }

  c.validation_points = get_count(cfg, "validation_points", c.validation_points, "config");
  if (c.validation_points < 2)
    throw ConfigError("validation_points: at least 2 required");
  if (cfg.contains("validation_extra"))
    c.validation_extra = parse_points(cfg["validation_extra"], "validation_extra");
  c.filtering = get_or<bool>(cfg, "filtering", c.filtering, "config");
  c.timing = get_or<bool>(cfg, "timing", c.timing, "config");
  c.output_dir = get_or<std::string>(cfg, "output_dir", c.output_dir.string(), "config");
  if (c.output_dir.empty())
    throw ConfigError("output_dir: must not be empty");
  return c;
}

RunConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config '" + path.string() + "'");
  json cfg;
  try
  {
    cfg = json::parse(in);
  }
  catch (const json::exception &e)
  {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(cfg);
}

int run_solve(const RunConfig &c, std::ostream &log)
{
  try
  {
    Problem problem = make_problem(c);
    const std::vector<mrinep_complex> rhs = make_rhs(c, problem.get());
    const mrinep_region region = region_of(c);

    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec)
      throw RunError("cannot create output directory '" + c.output_dir.string() + "': " + ec.message());
    {
      std::ofstream out(c.output_dir / "resolved_config.json", std::ios::binary);
      out << c.resolved().dump(2) << '\n';
      if (!out)
        throw RunError("cannot write resolved_config.json");
    }

    mrinep_greedy_options options;
    mrinep_greedy_options_init(&options);
    options.budget = c.budget;
    std::vector<mrinep_complex> nodes;
    for (cplx z : c.initial_nodes)
      nodes.push_back(to_c(z));
    options.initial_nodes = nodes.data();
    options.initial_count = nodes.size();
    options.mode = c.mode == "constrained_sum" ? MRINEP_NORM_CONSTRAINED_SUM : MRINEP_NORM_EUCLIDEAN;
    options.use_qr = c.use_qr ? 1 : 0;
    if (c.early_stop)
    {
      options.early_stop_enabled = 1;
      options.early_stop = *c.early_stop;
    }

    mrinep_greedy_result *raw = nullptr;
    const mrinep_status status = mrinep_greedy_run(problem.get(), rhs.data(), c.rhs_columns, &region, &options, &raw);
    if (status == MRINEP_ERR_INVALID_ARGUMENT)
      throw ConfigError(std::string("greedy: ") + mrinep_last_error());
    if (status != MRINEP_ERR_PARTIAL_RUN)
      check(status, "greedy");
    Greedy greedy(raw);
    const bool partial = status == MRINEP_ERR_PARTIAL_RUN;
    std::string marker;
    if (partial)
    {
      std::string reason = mrinep_greedy_abort_reason(greedy.get());
      for (char &ch : reason)
        if (ch == '\n' || ch == '\r')
          ch = ' ';
      marker = "# status: partial: " + reason;
      log << "warning: partial run: " << reason << '\n';
    }

    const mrinep_surrogate *surrogate = mrinep_greedy_surrogate(greedy.get());
    const size_t count = mrinep_surrogate_size(surrogate);
    const size_t initial = c.initial_nodes.size();
    std::vector<mrinep_complex> surrogate_nodes(count);
    check(mrinep_surrogate_nodes(surrogate, surrogate_nodes.data()), "surrogate nodes");
    const size_t trace_size = mrinep_greedy_trace_size(greedy.get());
    std::vector<mrinep_trace_record> trace(trace_size);
    for (size_t i = 0; i < trace_size; ++i)
      check(mrinep_greedy_trace_record(greedy.get(), i, &trace[i]), "trace");

    {
      const auto path = c.output_dir / "samples.csv";
      std::ofstream out = open_csv(path, "iter,z_re,z_im,u_norm,indicator_at_choice");
      for (size_t j = 0; j < count; ++j)
      {
        double norm = 0.0;
        check(mrinep_greedy_sample_norm(greedy.get(), j, &norm), "sample norm");
        size_t iter = 0;
        double choice = std::numeric_limits<double>::quiet_NaN();
        if (j >= initial && j - initial < trace_size)
        {
          iter = trace[j - initial].iteration;
          choice = trace[j - initial].indicator;
        }
        out << iter << ',' << format_double(surrogate_nodes[j].re) << ',' << format_double(surrogate_nodes[j].im)
            << ',' << format_double(norm) << ',' << format_double(choice) << '\n';
      }
      if (partial)
        out << marker << '\n';
      close_csv(out, path);
    }

    {
      const auto path = c.output_dir / "trace.csv";
      std::ofstream out = open_csv(path, "iter,z_re,z_im,solve_seconds,event");
      for (const auto &r : trace)
      {
        const char *event = r.event == MRINEP_EVENT_OFFSET    ? "offset"
                            : r.event == MRINEP_EVENT_SUSPECT ? "suspect"
                                                              : "ok";
        out << r.iteration << ',' << format_double(r.z.re) << ',' << format_double(r.z.im) << ','
            << format_double(c.timing ? r.solve_seconds : 0.0) << ',' << event << '\n';
      }
      if (partial)
        out << marker << '\n';
      close_csv(out, path);
    }

    {
      const auto path = c.output_dir / "eigenpairs.csv";
      std::ofstream out = open_csv(path, "idx,lambda_re,lambda_im,residual,order_index,in_region,filtered");
      mrinep_recovery_options ro;
      mrinep_recovery_options_init(&ro);
      ro.tol_cluster = c.tol_cluster;
      ro.tol_region = c.tol_region;
      ro.newton_tol = c.newton_tol;
      ro.filtering = c.filtering ? 1 : 0;
      mrinep_eigenpairs *ep_raw = nullptr;
      const mrinep_status es = mrinep_eigenpairs_extract(surrogate, &region, problem.get(), &ro, &ep_raw);
      Eigenpairs eigenpairs(ep_raw);
      if (es != MRINEP_OK && !partial)
        check(es, "eigenpair extraction");
      if (es != MRINEP_OK)
        log << "warning: eigenpair extraction failed: " << mrinep_last_error() << '\n';
      size_t in_region = 0;
      for (size_t i = 0; i < mrinep_eigenpairs_count(eigenpairs.get()); ++i)
      {
        mrinep_eigenpair_info info;
        check(mrinep_eigenpairs_info(eigenpairs.get(), i, &info), "eigenpair");
        in_region += info.in_region != 0;
        out << i << ',' << format_double(info.lambda.re) << ',' << format_double(info.lambda.im) << ','
            << format_double(info.residual) << ',' << info.order_index << ',' << info.in_region << ','
            << info.filtered << '\n';
      }
      if (partial)
        out << marker << '\n';
      close_csv(out, path);
      log << "solves: " << mrinep_greedy_solves(greedy.get()) << ", eigenpairs: "
          << mrinep_eigenpairs_count(eigenpairs.get()) << " (" << in_region << " in region)\n";
    }

    check(mrinep_surrogate_save(surrogate, (c.output_dir / "surrogate.bin").string().c_str()), "surrogate save");
    return partial ? exit_partial : exit_ok;
  }
  catch (const RunError &e)
  {
    log << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int run_validate(const RunConfig &c, const std::filesystem::path &run_dir, std::ostream &log)
{
  try
  {
    Problem problem = make_problem(c);
    const std::vector<mrinep_complex> rhs = make_rhs(c, problem.get());
    mrinep_surrogate *raw = nullptr;
    check(mrinep_surrogate_load((run_dir / "surrogate.bin").string().c_str(), &raw), "surrogate load");
    Surrogate surrogate(raw);
    const size_t n = mrinep_problem_dim(problem.get());
    if (mrinep_surrogate_rows(surrogate.get()) != n || mrinep_surrogate_cols(surrogate.get()) != c.rhs_columns)
      throw RunError("surrogate in '" + run_dir.string() + "' does not match the configured problem");

    const size_t count = mrinep_surrogate_size(surrogate.get());
    std::vector<mrinep_complex> nodes(count);
    check(mrinep_surrogate_nodes(surrogate.get(), nodes.data()), "surrogate nodes");

    // Equispaced validation points without the nodes, then any forced extra points.
    std::vector<cplx> points;
    const double spacing = std::abs(c.region_b - c.region_a) / static_cast<double>(c.validation_points - 1);
    for (size_t i = 0; i < c.validation_points; ++i)
    {
      const cplx z = i + 1 == c.validation_points
                         ? c.region_b
                         : c.region_a + (c.region_b - c.region_a) * (static_cast<double>(i) /
                                                                     static_cast<double>(c.validation_points - 1));
      bool at_node = false;
      for (const auto &node : nodes)
        at_node = at_node || std::abs(z - from_c(node)) <= 1e-12 * spacing;
      if (!at_node)
        points.push_back(z);
    }
    points.insert(points.end(), c.validation_extra.begin(), c.validation_extra.end());

    const size_t block = n * c.rhs_columns;
    std::vector<double> errors(points.size(), std::numeric_limits<double>::quiet_NaN());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      std::vector<mrinep_complex> exact(block), approx(block);
      for (size_t i = next++; i < points.size(); i = next++)
      {
        const mrinep_complex z = to_c(points[i]);
        if (mrinep_problem_solve(problem.get(), z, rhs.data(), c.rhs_columns, exact.data()) != MRINEP_OK)
          continue;
        if (mrinep_surrogate_eval(surrogate.get(), z, approx.data()) != MRINEP_OK)
          continue;
        double diff = 0.0, norm = 0.0;
        for (size_t k = 0; k < block; ++k)
        {
          const cplx u = from_c(exact[k]);
          diff += std::norm(from_c(approx[k]) - u);
          norm += std::norm(u);
        }
        errors[i] = std::sqrt(diff) / std::sqrt(norm);
      }
    };
    const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(points.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
      pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
      t.join();

    size_t failed = 0;
    {
      const auto path = run_dir / "error.csv";
      std::ofstream out = open_csv(path, "z_re,z_im,rel_error");
      for (size_t i = 0; i < points.size(); ++i)
      {
        failed += std::isnan(errors[i]);
        out << format_double(points[i].real()) << ',' << format_double(points[i].imag()) << ','
            << format_double(errors[i]) << '\n';
      }
      close_csv(out, path);
    }
    {
      const auto path = run_dir / "estimator.csv";
      std::ofstream out = open_csv(path, "z_re,z_im,indicator");
      const cplx a = c.region_a, b = c.region_b;
      for (size_t i = 0; i < c.candidates; ++i)
      {
        const cplx z = i + 1 == c.candidates
                           ? b
                           : a + (b - a) * (static_cast<double>(i) / static_cast<double>(c.candidates - 1));
        double rho = 0.0;
        check(mrinep_surrogate_indicator(surrogate.get(), to_c(z), &rho), "indicator");
        out << format_double(z.real()) << ',' << format_double(z.imag()) << ',' << format_double(rho) << '\n';
      }
      close_csv(out, path);
    }
    log << "validation points: " << points.size() << " (" << failed << " failed)\n";
    return exit_ok;
  }
  catch (const RunError &e)
  {
    log << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

std::string list_problems(bool as_json)
{
  size_t needed = 0;
  check(mrinep_list_problems(as_json ? 1 : 0, nullptr, 0, &needed), "list problems");
  std::string text(needed, '\0');
  check(mrinep_list_problems(as_json ? 1 : 0, text.data(), text.size(), &needed), "list problems");
  text.resize(needed - 1);
  return text;
}

} // namespace mrinep::app

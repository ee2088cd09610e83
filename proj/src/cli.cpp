#include "glkde/cli.hpp"

#include "glkde/bench.hpp"
#include "glkde/competitors.hpp"
#include "glkde/errors.hpp"
#include "glkde/gl_estimator.hpp"
#include "glkde/processes.hpp"
#include "glkde/sample_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace glkde {

namespace {

constexpr const char* workers_env = "GLKDE_WORKERS";

struct SimulateArgs
{
  std::string density;
  int dependence_case = 1;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  int truncation = 40;
  std::size_t burn_in = 1000;
  double alpha = 0.5;
  double beta = 0.0;
  double gamma = 0.5;
  std::size_t auxiliary = 0;
};

struct EstimateArgs
{
  std::string data;
  std::string method = "gl";
  std::string kernel = "uniform";
  double q = 2.0;
  std::optional<double> x0;
  std::optional<std::size_t> grid;
  std::optional<double> delta_n;
  std::string out;
  std::string diagnostics;
};

struct BenchArgs
{
  std::string config;
  std::string out;
  std::string format;
  std::string dump;
  std::optional<unsigned> workers;
  std::optional<std::size_t> replications;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  bool no_timing = false;
};

// Writes to `path`, or to `fallback` when the path is empty.
template<typename Fn>
void
with_output(const std::string& path, std::ostream& fallback, Fn&& fn)
{
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  fn(file);
  if (!file) {
    throw IoError("failed writing '" + path + "'");
  }
}

int
run_simulate(const SimulateArgs& a, std::ostream& out)
{
  ProcessSpec spec;
  spec.dependence = dependence_case_from_int(a.dependence_case);
  spec.target = make_density(a.density);
  spec.n = a.n;
  spec.seed = a.seed;
  spec.truncation_width = a.truncation;
  spec.burn_in = a.burn_in;
  spec.alpha = a.alpha;
  spec.beta = a.beta;
  spec.gamma = a.gamma;
  spec.auxiliary_sample_size = a.auxiliary;
  const auto sample = simulate(spec);
  with_output(a.out, out, [&](std::ostream& os) { write_sample_csv(os, sample); });
  return exit_ok;
}

int
run_estimate(const EstimateArgs& a, std::ostream& out)
{
  const Method method = method_from_name(a.method);
  const Kernel& kernel = find_kernel(a.kernel);
  const auto data = read_sample_csv(a.data);
  if (data.empty()) {
    throw DomainError("'" + a.data + "' contains no observations");
  }
  const std::vector<double> points = a.x0 ? std::vector<double>{*a.x0} : uniform_eval_grid(*a.grid);

  std::vector<double> values;
  std::vector<double> bandwidths;
  std::vector<PointEstimate> pointwise;
  switch (method) {
    case Method::GL: {
      GLConfig config;
      config.q = a.q;
      config.delta_n_override = a.delta_n;
      config.kernel = kernel;
      pointwise = estimate_curve(data, points, config);
      for (const auto& e : pointwise) {
        values.push_back(e.value);
        bandwidths.push_back(e.h_hat);
      }
      break;
    }
    case Method::CV:
    case Method::RT: {
      const double h = method == Method::CV
                         ? cv_select(data, build_grid(data.size(), a.q), kernel).h
                         : rot_bandwidth(data).h;
      values = fixed_bandwidth_curve(data, h, points, kernel);
      bandwidths.assign(points.size(), h);
      break;
    }
  }

  with_output(a.out, out, [&](std::ostream& os) {
    os << "x,f_hat,h_hat\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
      os << format_double(points[k]) << ',' << format_double(values[k]) << ','
         << format_double(bandwidths[k]) << '\n';
    }
  });
  if (!a.diagnostics.empty()) {
    with_output(a.diagnostics, out, [&](std::ostream& os) {
      os << "x,h,f_hat_h,j_hat_n,m_hat_n,a_term\n";
      for (const auto& e : pointwise) {
        for (const auto& d : e.per_h) {
          os << format_double(e.x0) << ',' << format_double(d.h) << ','
             << format_double(d.f_hat_h) << ',' << format_double(d.j_hat_n) << ','
             << format_double(d.m_hat_n) << ',' << format_double(d.a_term) << '\n';
        }
      }
    });
  }
  return exit_ok;
}

unsigned
default_workers()
{
  if (const char* env = std::getenv(workers_env)) {
    try {
      const long v = std::stol(env);
      if (v >= 0) {
        return static_cast<unsigned>(v);
      }
    } catch (const std::exception&) {
    }
    throw DomainError(std::string(workers_env) + " must be a non-negative integer, got '" + env + "'");
  }
  return 1;
}

int
run_bench(const BenchArgs& a, std::ostream& out)
{
  BenchConfig config = read_bench_config(a.config);
  if (a.replications) {
    config.replications = *a.replications;
  }
  if (a.n) {
    config.n = *a.n;
  }
  if (a.seed) {
    config.seed = *a.seed;
  }
  if (a.no_timing) {
    config.record_timing = false;
  }
  config.validate();

  ReportFormat format = ReportFormat::CSV;
  if (a.format == "json" ||
      (a.format.empty() && a.out.size() >= 5 && a.out.compare(a.out.size() - 5, 5, ".json") == 0)) {
    format = ReportFormat::JSON;
  }
  const unsigned workers = a.workers ? *a.workers : default_workers();
  const BenchReport report = run_benchmark(config, workers);
  with_output(a.out, out, [&](std::ostream& os) {
    os << (format == ReportFormat::CSV ? report_csv(report) : report_json(report));
  });
  if (!a.dump.empty()) {
    write_replication_dump(report, a.dump);
  }
  return exit_ok;
}

} // namespace

int
run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Pointwise adaptive kernel density estimation for weakly dependent data", "glkde"};
  app.require_subcommand(1, 1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw a sample from f1/f2/f3 under dependence case 1/2/3");
  simulate_cmd->add_option("--density", sim.density, "Target density")
    ->required()
    ->check(CLI::IsMember({"f1", "f2", "f3"}));
  simulate_cmd->add_option("--case", sim.dependence_case, "Dependence case")
    ->required()
    ->check(CLI::IsMember({1, 2, 3}));
  simulate_cmd->add_option("--n", sim.n, "Sample size")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Random seed");
  simulate_cmd->add_option("--out", sim.out, "Output CSV (stdout if omitted)");
  simulate_cmd->add_option("--truncation", sim.truncation, "Case 2 moving-average half width")
    ->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--burn-in", sim.burn_in, "Case 3 burn-in steps");
  simulate_cmd->add_option("--alpha", sim.alpha, "Case 3 ARCH coefficient")->check(CLI::Range(0.0, 0.999999999));
  simulate_cmd->add_option("--beta", sim.beta, "Case 3 GARCH coefficient")->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--gamma", sim.gamma, "Case 3 intercept")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--aux-size", sim.auxiliary, "Case 3 auxiliary sample size (0 = n)");

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the density of a one-column sample");
  estimate_cmd->add_option("--data", est.data, "Sample CSV")->required()->check(CLI::ExistingFile);
  estimate_cmd->add_option("--method", est.method, "Bandwidth selector")
    ->check(CLI::IsMember({"gl", "cv", "rt"}, CLI::ignore_case));
  estimate_cmd->add_option("--kernel", est.kernel, "Kernel name")
    ->check(CLI::IsMember({"uniform", "triangular", "epanechnikov"}));
  estimate_cmd->add_option("--q", est.q, "Risk exponent")->check(CLI::PositiveNumber);
  auto* x0_opt = estimate_cmd->add_option("--x0", est.x0, "Single evaluation point");
  auto* grid_opt = estimate_cmd->add_option("--grid", est.grid, "Number of equispaced points on [0, 1]")
                     ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  x0_opt->excludes(grid_opt);
  estimate_cmd->add_option("--delta-n", est.delta_n, "Override of delta_n (GL only)")
    ->check(CLI::NonNegativeNumber);
  estimate_cmd->add_option("--out", est.out, "Output CSV (stdout if omitted)");
  auto* diag_opt =
    estimate_cmd->add_option("--diagnostics", est.diagnostics, "Per-bandwidth table (GL only)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo ISE comparison of GL, CV and RT");
  bench_cmd->add_option("--config", bench.config, "Bench configuration JSON")
    ->required()
    ->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench.out, "Report path (stdout if omitted)");
  bench_cmd->add_option("--format", bench.format, "csv or json (default from --out extension)")
    ->check(CLI::IsMember({"csv", "json"}));
  bench_cmd->add_option("--dump", bench.dump, "Per-replication ISE CSV");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (0 = all cores; default $GLKDE_WORKERS or 1)");
  bench_cmd->add_option("--replications", bench.replications, "Override replications")
    ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--n", bench.n, "Override sample size")->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  bench_cmd->add_option("--seed", bench.seed, "Override master seed");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Write zero timings for reproducible reports");

  std::vector<std::string> argv_storage{"glkde"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) {
    argv.push_back(s.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (estimate_cmd->parsed()) {
      if (x0_opt->count() == 0 && grid_opt->count() == 0) {
        throw CLI::RequiredError("estimate: one of --x0 or --grid");
      }
      if (diag_opt->count() > 0 && method_from_name(est.method) != Method::GL) {
        throw CLI::ValidationError("--diagnostics", "only available with --method gl");
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (simulate_cmd->parsed()) {
      return run_simulate(sim, out);
    }
    if (estimate_cmd->parsed()) {
      return run_estimate(est, out);
    }
    return run_bench(bench, out);
  } catch (const std::exception& e) {
    err << "glkde: error: " << e.what() << '\n';
    return exit_runtime;
  }
}

} // namespace glkde

#include "glkde/bench.hpp"

#include "glkde/competitors.hpp"
#include "glkde/errors.hpp"
#include "glkde/gl_estimator.hpp"
#include "glkde/processes.hpp"
#include "glkde/rng.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace glkde {

namespace {

constexpr std::array<std::string_view, 3> known_densities{"f1", "f2", "f3"};

std::size_t
density_index(const std::string& name)
{
  const auto it = std::find(known_densities.begin(), known_densities.end(), name);
  if (it == known_densities.end()) {
    throw DomainError("bench: unknown density '" + name + "' (known: f1, f2, f3)");
  }
  return static_cast<std::size_t>(it - known_densities.begin());
}

struct ReplicationOutcome
{
  double ise = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
  std::string error;
};

void
aggregate(CellResult& cell, const std::vector<ReplicationOutcome>& outcomes, bool record_timing)
{
  cell.ise.clear();
  double sum = 0.0;
  double seconds = 0.0;
  std::size_t ok = 0;
  for (const auto& o : outcomes) {
    cell.ise.push_back(o.ise);
    if (o.error.empty()) {
      sum += o.ise;
      seconds += o.seconds;
      ++ok;
    } else {
      ++cell.failed;
      if (cell.first_error.empty()) {
        cell.first_error = o.error;
      }
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // more than 1% failures aborts the cell
  cell.aborted = ok == 0 || 100 * cell.failed > outcomes.size();
  if (cell.aborted) {
    cell.mean_ise = nan;
    cell.se_ise = nan;
    cell.mean_seconds = record_timing && ok > 0 ? seconds / static_cast<double>(ok) : 0.0;
    return;
  }
  const double k = static_cast<double>(ok);
  cell.mean_ise = sum / k;
  double ss = 0.0;
  for (const auto& o : outcomes) {
    if (o.error.empty()) {
      ss += (o.ise - cell.mean_ise) * (o.ise - cell.mean_ise);
    }
  }
  cell.se_ise = ok > 1 ? std::sqrt(ss / (k - 1.0) / k) : 0.0;
  cell.mean_seconds = record_timing ? seconds / k : 0.0;
}

} // namespace

std::string_view
method_name(Method m)
{
  switch (m) {
    case Method::GL:
      return "GL";
    case Method::CV:
      return "CV";
    case Method::RT:
      return "RT";
  }
  return "?";
}

Method
method_from_name(std::string_view name)
{
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  if (upper == "GL") {
    return Method::GL;
  }
  if (upper == "CV") {
    return Method::CV;
  }
  if (upper == "RT") {
    return Method::RT;
  }
  throw DomainError("unknown method '" + std::string(name) + "' (known: GL, CV, RT)");
}

void
BenchConfig::validate() const
{
  if (replications < 1) {
    throw DomainError("bench config: replications must be at least 1");
  }
  if (n < 2) {
    throw DomainError("bench config: n must be at least 2");
  }
  if (eval_grid_size < 2) {
    throw DomainError("bench config: eval_grid_size must be at least 2");
  }
  if (!(q > 0.0)) {
    throw DomainError("bench config: q must be positive");
  }
  if (delta_n_override && !(*delta_n_override >= 0.0)) {
    throw DomainError("bench config: delta_n must be non-negative");
  }
  for (const auto& d : densities) {
    density_index(d);
  }
  for (int c : cases) {
    dependence_case_from_int(c);
  }
  find_kernel(kernel);
}

std::vector<double>
uniform_eval_grid(std::size_t m)
{
  if (m < 2) {
    throw DomainError("evaluation grid needs at least 2 points");
  }
  std::vector<double> grid(m);
  for (std::size_t k = 0; k < m; ++k) {
    grid[k] = static_cast<double>(k) / static_cast<double>(m - 1);
  }
  return grid;
}

double
ise(const DensityModel& truth, std::span<const double> eval_points, std::span<const double> estimate)
{
  if (eval_points.size() != estimate.size()) {
    throw DomainError("ise: estimate has " + std::to_string(estimate.size()) +
                      " values but the grid has " + std::to_string(eval_points.size()));
  }
  if (eval_points.size() < 2 || eval_points.front() != 0.0 || eval_points.back() != 1.0) {
    throw DomainError("ise: evaluation grid must span [0, 1]");
  }
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < eval_points.size(); ++k) {
    const double diff = truth.pdf(eval_points[k]) - estimate[k];
    const double sq = diff * diff;
    if (k > 0) {
      const double width = eval_points[k] - eval_points[k - 1];
      if (!(width > 0.0)) {
        throw DomainError("ise: evaluation grid must be strictly increasing");
      }
      total += 0.5 * width * (prev + sq);
    }
    prev = sq;
  }
  return total;
}

std::uint64_t
replication_seed(std::uint64_t master,
                 std::size_t density_index,
                 int dependence_case,
                 Method method,
                 std::size_t replication)
{
  return mix_seed(master,
                  {static_cast<std::uint64_t>(density_index),
                   static_cast<std::uint64_t>(dependence_case),
                   static_cast<std::uint64_t>(method),
                   static_cast<std::uint64_t>(replication)});
}

std::vector<double>
fit_curve(Method method,
          std::span<const double> data,
          std::span<const double> eval_points,
          const BenchConfig& config)
{
  const Kernel& kernel = find_kernel(config.kernel);
  switch (method) {
    case Method::GL: {
      GLConfig gl;
      gl.q = config.q;
      gl.delta_n_override = config.delta_n_override;
      gl.kernel = kernel;
      const auto estimates = estimate_curve(data, eval_points, gl);
      std::vector<double> values;
      values.reserve(estimates.size());
      for (const auto& e : estimates) {
        values.push_back(e.value);
      }
      return values;
    }
    case Method::CV: {
      const auto choice = cv_select(data, build_grid(data.size(), config.q), kernel);
      return fixed_bandwidth_curve(data, choice.h, eval_points, kernel);
    }
    case Method::RT:
      return fixed_bandwidth_curve(data, rot_bandwidth(data).h, eval_points, kernel);
  }
  throw DomainError("unknown method");
}

BenchReport
run_benchmark(const BenchConfig& config, unsigned workers)
{
  config.validate();
  BenchReport report{config, {}};
  for (const auto& d : config.densities) {
    for (int c : config.cases) {
      for (Method m : config.methods) {
        CellResult cell;
        cell.density = d;
        cell.dependence_case = c;
        cell.method = m;
        report.cells.push_back(std::move(cell));
      }
    }
  }

  const std::size_t p = config.replications;
  const std::size_t total = report.cells.size() * p;
  std::vector<ReplicationOutcome> outcomes(total);
  const auto grid = uniform_eval_grid(config.eval_grid_size);

  const auto run_task = [&](std::size_t task) {
    const CellResult& cell = report.cells[task / p];
    const std::size_t rep = task % p;
    ReplicationOutcome& out = outcomes[task];
    try {
      const DensityModel target = make_density(cell.density);
      ProcessSpec spec;
      spec.dependence = dependence_case_from_int(cell.dependence_case);
      spec.target = target;
      spec.n = config.n;
      spec.seed = replication_seed(
        config.seed, density_index(cell.density), cell.dependence_case, cell.method, rep);
      const auto data = simulate(spec);
      const auto start = std::chrono::steady_clock::now();
      const auto estimate = fit_curve(cell.method, data, grid, config);
      const auto stop = std::chrono::steady_clock::now();
      out.seconds = std::chrono::duration<double>(stop - start).count();
      out.ise = ise(target, grid, estimate);
    } catch (const std::exception& e) {
      out.ise = std::numeric_limits<double>::quiet_NaN();
      out.error = e.what();
      if (out.error.empty()) {
        out.error = "unknown error";
      }
    }
  };

  if (workers == 0) {
    workers = std::max(1U, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
  if (workers <= 1) {
    for (std::size_t t = 0; t < total; ++t) {
      run_task(t);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < total; t = next.fetch_add(1)) {
          run_task(t);
        }
      });
    }
  }

  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const std::vector<ReplicationOutcome> slice(outcomes.begin() + static_cast<std::ptrdiff_t>(c * p),
                                                outcomes.begin() + static_cast<std::ptrdiff_t>((c + 1) * p));
    aggregate(report.cells[c], slice, config.record_timing);
  }
  return report;
}

} // namespace glkde

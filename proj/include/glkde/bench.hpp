#pragma once

#include "glkde/density.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glkde {

enum class Method
{
  GL,
  CV,
  RT,
};

std::string_view method_name(Method m);
Method method_from_name(std::string_view name);

struct BenchConfig
{
  std::size_t replications = 200;
  std::size_t n = 1000;
  std::vector<std::string> densities{"f1", "f2", "f3"};
  std::vector<int> cases{1, 2, 3};
  std::vector<Method> methods{Method::GL, Method::CV, Method::RT};
  std::size_t eval_grid_size = 201;
  std::string kernel = "uniform";
  double q = 2.0;
  std::uint64_t seed = 20240601;
  std::optional<double> delta_n_override;
  /// When false every timing field is written as 0 so reports are
  /// byte-reproducible.
  bool record_timing = true;

  void validate() const;
};

struct CellResult
{
  std::string density;
  int dependence_case = 1;
  Method method = Method::GL;
  double mean_ise = 0.0;
  double se_ise = 0.0;
  double mean_seconds = 0.0;
  std::size_t failed = 0;
  bool aborted = false;
  std::string first_error;
  /// One entry per replication; NaN marks a failed replication.
  std::vector<double> ise;
};

struct BenchReport
{
  BenchConfig config;
  std::vector<CellResult> cells;
};

/// m equispaced points on [0, 1] including both endpoints.
std::vector<double> uniform_eval_grid(std::size_t m);

/// Trapezoid-rule integral of (f - estimate)^2 over the evaluation grid,
/// which must be increasing and span [0, 1].
double ise(const DensityModel& truth,
           std::span<const double> eval_points,
           std::span<const double> estimate);

/// Seed of one replication of one cell; depends only on the coordinates.
std::uint64_t replication_seed(std::uint64_t master,
                               std::size_t density_index,
                               int dependence_case,
                               Method method,
                               std::size_t replication);

/// Fits `method` to `data` and returns the estimate on `eval_points`.
std::vector<double> fit_curve(Method method,
                              std::span<const double> data,
                              std::span<const double> eval_points,
                              const BenchConfig& config);

/// Runs every (density, case, method) cell. The result does not depend on
/// `workers`; 0 picks the hardware concurrency.
BenchReport run_benchmark(const BenchConfig& config, unsigned workers = 1);

enum class ReportFormat
{
  CSV,
  JSON,
};

std::string report_csv(const BenchReport& report);
std::string report_json(const BenchReport& report);
std::string replication_dump_csv(const BenchReport& report);

void write_report(const BenchReport& report, const std::string& path, ReportFormat format);
void write_replication_dump(const BenchReport& report, const std::string& path);
BenchReport read_report_json(const std::string& path);

BenchConfig bench_config_from_json_text(std::string_view text);
BenchConfig read_bench_config(const std::string& path);
std::string bench_config_to_json_text(const BenchConfig& config);

/// Number rendering used by every writer: 17 significant digits, "nan" for
/// NaN.
std::string format_double(double value);

} // namespace glkde

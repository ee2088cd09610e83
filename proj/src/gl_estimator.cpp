#include "glkde/gl_estimator.hpp"

#include "glkde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glkde {

namespace {

void
require_sample(std::span<const double> data, double h)
{
  if (data.empty()) {
    throw DomainError("kernel estimate: data is empty");
  }
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg << "kernel estimate: bandwidth must be positive, got " << h;
    throw DomainError(msg.str());
  }
}

// A(h_i) from per-bandwidth estimates and thresholds, grid in descending order
// so max(h_i, h_j) is the entry at min(i, j).
double
excess_from_table(std::size_t i, std::span<const double> f_hat, std::span<const double> m_hat)
{
  double worst = 0.0;
  for (std::size_t j = 0; j < f_hat.size(); ++j) {
    const std::size_t joint = std::min(i, j);
    const double excess = std::abs(f_hat[joint] - f_hat[j]) - (m_hat[j] + m_hat[joint]);
    worst = std::max(worst, excess);
  }
  return worst;
}

// `sorted` is the sample in increasing order; `n` its size. For each
// bandwidth only the observations inside the (slightly widened) kernel window
// are visited. Everything outside contributes an exact zero.
PointEstimate
estimate_at(std::span<const double> sorted, double x0, const BandwidthGrid& grid, const GLConfig& config)
{
  const std::size_t n = sorted.size();
  const double nd = static_cast<double>(n);
  const Kernel& kernel = config.kernel;

  const std::size_t m = grid.size();
  std::vector<double> f_hat(m);
  std::vector<double> m_hat(m);
  PointEstimate out{x0, 0.0, 0.0, {}};
  out.per_h.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double h = grid.bandwidths[k];
    const double reach = h * kernel.support_radius() * (1.0 + 1e-9);
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), x0 - reach);
    const auto last = std::upper_bound(first, sorted.end(), x0 + reach);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (auto it = first; it != last; ++it) {
      const double w = evaluate_scaled(kernel, h, x0 - *it);
      sum += w;
      sum_sq += w * w;
    }
    f_hat[k] = sum / nd;
    const double j_hat = sum_sq / (nd * nd);
    m_hat[k] = mn_hat(j_hat, h, n, config);
    out.per_h.push_back({h, f_hat[k], j_hat, m_hat[k], 0.0});
  }

  std::size_t best = 0;
  for (std::size_t k = 0; k < m; ++k) {
    out.per_h[k].a_term = excess_from_table(k, f_hat, m_hat);
    // strict comparison: ties keep the larger bandwidth seen first
    if (out.per_h[k].objective() < out.per_h[best].objective()) {
      best = k;
    }
  }
  out.h_hat = out.per_h[best].h;
  out.value = out.per_h[best].f_hat_h;
  return out;
}

std::vector<double>
sorted_copy(std::span<const double> data)
{
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

} // namespace

bool
BandwidthGrid::contains(double h) const
{
  return std::find(bandwidths.begin(), bandwidths.end(), h) != bandwidths.end();
}

BandwidthGrid
build_grid(std::size_t n, double q)
{
  if (n < 2) {
    throw DomainError("bandwidth grid: sample size must be at least 2, got " + std::to_string(n));
  }
  if (!(q > 0.0)) {
    throw DomainError("bandwidth grid: risk exponent q must be positive");
  }
  BandwidthGrid grid;
  grid.n = n;
  grid.q = q;
  const double log_n = std::log(static_cast<double>(n));
  grid.h_star = std::exp(std::sqrt(log_n)) / static_cast<double>(n);
  grid.h_upper = std::pow(log_n, -1.0 / q);
  for (int k = 0; k < 1075; ++k) {
    const double h = std::ldexp(1.0, -k);
    if (h < grid.h_star) {
      break;
    }
    if (h <= grid.h_upper) {
      grid.bandwidths.push_back(h);
    }
  }
  if (grid.bandwidths.empty()) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "degenerate grid: no dyadic bandwidth 2^-k lies in [h_star, h_upper] = [" << grid.h_star
        << ", " << grid.h_upper << "] for n = " << n << ", q = " << q;
    throw DegenerateGridError(msg.str());
  }
  return grid;
}

double
GLConfig::delta_n(std::size_t n) const
{
  if (delta_n_override) {
    return *delta_n_override;
  }
  return 1.0 / std::sqrt(std::log(static_cast<double>(n)));
}

void
GLConfig::validate() const
{
  if (!(q > 0.0)) {
    throw DomainError("GL config: q must be positive");
  }
  if (delta_n_override && !(*delta_n_override >= 0.0)) {
    throw DomainError("GL config: delta_n override must be non-negative");
  }
}

double
kernel_estimate(std::span<const double> data, double h, double x0, const Kernel& kernel)
{
  require_sample(data, h);
  double sum = 0.0;
  for (double x : data) {
    sum += evaluate_scaled(kernel, h, x0 - x);
  }
  return sum / static_cast<double>(data.size());
}

double
jn_hat(std::span<const double> data, double h, double x0, const Kernel& kernel)
{
  require_sample(data, h);
  double sum_sq = 0.0;
  for (double x : data) {
    const double w = evaluate_scaled(kernel, h, x0 - x);
    sum_sq += w * w;
  }
  const double nd = static_cast<double>(data.size());
  return sum_sq / (nd * nd);
}

double
mn_hat(double j_hat, double h, std::size_t n, const GLConfig& config)
{
  if (!(h > 0.0 && h < 1.0)) {
    std::ostringstream msg;
    msg << "variance penalty: bandwidth must lie in (0, 1), got " << h;
    throw DomainError(msg.str());
  }
  if (n < 1) {
    throw DomainError("variance penalty: sample size must be positive");
  }
  const double nh = static_cast<double>(n) * h;
  return std::sqrt(2.0 * config.q * std::abs(std::log(h)) * (j_hat + config.delta_n(n) / nh));
}

double
excess_deviation(std::span<const double> data,
                 double h,
                 double x0,
                 const BandwidthGrid& grid,
                 const GLConfig& config)
{
  const auto it = std::find(grid.bandwidths.begin(), grid.bandwidths.end(), h);
  if (it == grid.bandwidths.end()) {
    std::ostringstream msg;
    msg << "excess deviation: bandwidth " << h << " is not in the grid";
    throw DomainError(msg.str());
  }
  std::vector<double> f_hat;
  std::vector<double> m_hat;
  for (double g : grid.bandwidths) {
    f_hat.push_back(kernel_estimate(data, g, x0, config.kernel));
    m_hat.push_back(mn_hat(jn_hat(data, g, x0, config.kernel), g, data.size(), config));
  }
  return excess_from_table(static_cast<std::size_t>(it - grid.bandwidths.begin()), f_hat, m_hat);
}

PointEstimate
select_and_estimate(std::span<const double> data, double x0, const GLConfig& config)
{
  config.validate();
  if (data.empty()) {
    throw DomainError("GL estimate: data is empty");
  }
  const BandwidthGrid grid = build_grid(data.size(), config.q);
  return estimate_at(sorted_copy(data), x0, grid, config);
}

std::vector<PointEstimate>
estimate_curve(std::span<const double> data,
               std::span<const double> eval_points,
               const GLConfig& config)
{
  config.validate();
  if (data.empty()) {
    throw DomainError("GL estimate: data is empty");
  }
  return estimate_curve(data, eval_points, build_grid(data.size(), config.q), config);
}

std::vector<PointEstimate>
estimate_curve(std::span<const double> data,
               std::span<const double> eval_points,
               const BandwidthGrid& grid,
               const GLConfig& config)
{
  if (eval_points.empty()) {
    throw DomainError("GL estimate: no evaluation points");
  }
  if (grid.n != data.size()) {
    throw DomainError("GL estimate: grid was built for a different sample size");
  }
  std::vector<PointEstimate> out;
  out.reserve(eval_points.size());
  const auto sorted = sorted_copy(data);
  for (double x0 : eval_points) {
    out.push_back(estimate_at(sorted, x0, grid, config));
  }
  return out;
}

} // namespace glkde

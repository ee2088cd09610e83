#include "glkde/competitors.hpp"

#include "glkde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glkde {

namespace {

// Type-7 sample quantile (linear interpolation between order statistics).
double
sorted_quantile(const std::vector<double>& sorted, double p)
{
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

LscvTerms
lscv_terms(std::span<const double> data, double h, const Kernel& kernel)
{
  if (data.size() < 2) {
    throw DomainError("cross validation: need at least 2 observations");
  }
  if (!(h > 0.0)) {
    throw DomainError("cross validation: bandwidth must be positive");
  }
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  const double reach = 2.0 * h * kernel.support_radius();

  // Pairs i < j with X_j - X_i <= 2h; only those overlap.
  double conv_pairs = 0.0;
  double kernel_pairs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size() && x[j] - x[i] <= reach; ++j) {
      const double d = x[j] - x[i];
      conv_pairs += kernel.self_convolution(d / h);
      kernel_pairs += kernel(d / h);
    }
  }
  // (K_h * K_h)(d) = (K * K)(d / h) / h
  const double diagonal = n * kernel.self_convolution(0.0);
  const double quadratic = (diagonal + 2.0 * conv_pairs) / (n * n * h);
  const double resubstitution = 2.0 * (2.0 * kernel_pairs / h) / (n * (n - 1.0));
  return {quadratic, resubstitution};
}

GlobalBandwidth
cv_select(std::span<const double> data, const BandwidthGrid& grid, const Kernel& kernel)
{
  if (data.size() < 2) {
    throw DomainError("cross validation: need at least 2 observations");
  }
  if (grid.bandwidths.empty()) {
    throw DomainError("cross validation: empty bandwidth grid");
  }
  GlobalBandwidth out{grid.bandwidths.front(), GlobalMethod::CV, {}};
  out.criterion_trace.reserve(grid.size());
  double best = 0.0;
  for (double h : grid.bandwidths) {
    const double score = lscv_terms(data, h, kernel).score();
    out.criterion_trace.push_back({h, score});
    if (out.criterion_trace.size() == 1 || score < best) {
      best = score;
      out.h = h;
    }
  }
  return out;
}

GlobalBandwidth
rot_bandwidth(std::span<const double> data)
{
  if (data.size() < 2) {
    throw DomainError("rule of thumb: need at least 2 observations");
  }
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw DegenerateDataError("rule of thumb: sample has zero dispersion");
  }
  const double n = static_cast<double>(data.size());
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : data) {
    ss += (x - mean) * (x - mean);
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);

  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) {
    // heavy ties can zero the IQR while the standard deviation survives
    spread = sd;
  }
  return {1.06 * spread * std::pow(n, -0.2), GlobalMethod::RT, {}};
}

std::vector<double>
fixed_bandwidth_curve(std::span<const double> data,
                      double h,
                      std::span<const double> eval_points,
                      const Kernel& kernel)
{
  std::vector<double> out;
  out.reserve(eval_points.size());
  for (double x0 : eval_points) {
    out.push_back(kernel_estimate(data, h, x0, kernel));
  }
  return out;
}

} // namespace glkde

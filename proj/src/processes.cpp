#include "glkde/processes.hpp"

#include "glkde/errors.hpp"
#include "glkde/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace glkde {

namespace {

// cdf of U + U' for independent uniforms on [0, 1]
double
triangular_sum_cdf(double t)
{
  if (t <= 0.0) {
    return 0.0;
  }
  if (t >= 2.0) {
    return 1.0;
  }
  if (t <= 1.0) {
    return 0.5 * t * t;
  }
  return 1.0 - 0.5 * (2.0 - t) * (2.0 - t);
}

std::vector<double>
map_through_quantile(std::vector<double> levels, const DensityModel& target)
{
  for (double& u : levels) {
    u = target.quantile(u);
  }
  return levels;
}

} // namespace

DependenceCase
dependence_case_from_int(int value)
{
  switch (value) {
    case 1:
      return DependenceCase::iid;
    case 2:
      return DependenceCase::lambda_noncausal;
    case 3:
      return DependenceCase::arch;
    default:
      throw DomainError("dependence case must be 1, 2 or 3, got " + std::to_string(value));
  }
}

void
ProcessSpec::validate() const
{
  if (n < 1) {
    throw DomainError("process: sample size must be at least 1");
  }
  if (dependence == DependenceCase::lambda_noncausal && truncation_width < 0) {
    throw DomainError("process: truncation width must be non-negative");
  }
  if (dependence == DependenceCase::arch) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
      std::ostringstream msg;
      msg << "process: ARCH alpha must lie in [0, 1) for stationarity, got " << alpha;
      throw DomainError(msg.str());
    }
    if (!(beta >= 0.0 && alpha + beta < 1.0)) {
      throw DomainError("process: GARCH beta must be non-negative with alpha + beta < 1");
    }
    if (!(gamma > 0.0)) {
      throw DomainError("process: ARCH gamma must be positive");
    }
  }
}

double
moving_average_coefficient(int j)
{
  return std::ldexp(1.0, -std::abs(j)) / 3.0;
}

std::vector<double>
simulate_moving_average(std::size_t n, std::uint64_t seed, int truncation_width)
{
  const int J = truncation_width;
  std::vector<double> coeffs(2 * J + 1);
  for (int j = -J; j <= J; ++j) {
    coeffs[j + J] = moving_average_coefficient(j);
  }
  // innovations xi_{-J}, ..., xi_{n-1+J}
  Rng rng(seed);
  std::vector<double> innovations(n + 2 * J);
  for (double& xi : innovations) {
    xi = rng.bernoulli_half();
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Y_i = sum_j a_j xi_{i-j}; xi_{i-j} sits at offset i - j + J
    double sum = 0.0;
    for (int j = -J; j <= J; ++j) {
      sum += coeffs[j + J] * innovations[i + J - j];
    }
    y[i] = sum;
  }
  return y;
}

std::vector<double>
simulate_arch(std::size_t n,
              std::uint64_t seed,
              std::size_t burn_in,
              double alpha,
              double beta,
              double gamma)
{
  Rng rng(seed);
  double sigma_sq = gamma / (1.0 - alpha - beta);
  double previous = std::sqrt(sigma_sq) * rng.normal();
  std::vector<double> y(n);
  for (std::size_t step = 0; step < burn_in + n; ++step) {
    sigma_sq = gamma + alpha * previous * previous + beta * sigma_sq;
    previous = std::sqrt(sigma_sq) * rng.normal();
    if (step >= burn_in) {
      y[step - burn_in] = previous;
    }
  }
  return y;
}

double
marginal_g_case2(double y)
{
  if (y <= 0.0) {
    return 0.0;
  }
  if (y >= 1.0) {
    return 1.0;
  }
  return 0.5 * triangular_sum_cdf(3.0 * y) + 0.5 * triangular_sum_cdf(3.0 * y - 1.0);
}

std::vector<double>
simulate(const ProcessSpec& spec)
{
  spec.validate();
  switch (spec.dependence) {
    case DependenceCase::iid: {
      Rng rng(spec.seed);
      std::vector<double> u(spec.n);
      for (double& v : u) {
        v = rng.uniform();
      }
      return map_through_quantile(std::move(u), spec.target);
    }
    case DependenceCase::lambda_noncausal: {
      auto y = simulate_moving_average(spec.n, spec.seed, spec.truncation_width);
      for (double& v : y) {
        v = marginal_g_case2(v);
      }
      return map_through_quantile(std::move(y), spec.target);
    }
    case DependenceCase::arch: {
      const std::size_t m = spec.auxiliary_sample_size == 0 ? spec.n : spec.auxiliary_sample_size;
      auto y = simulate_arch(
        spec.n, mix_seed(spec.seed, {0}), spec.burn_in, spec.alpha, spec.beta, spec.gamma);
      const auto auxiliary = simulate_arch(
        m, mix_seed(spec.seed, {1}), spec.burn_in, spec.alpha, spec.beta, spec.gamma);
      const EmpiricalCdf g_hat(auxiliary);
      const double lo = 0.5 / static_cast<double>(m);
      const double hi = 1.0 - lo;
      for (double& v : y) {
        v = std::clamp(g_hat(v), lo, hi);
      }
      return map_through_quantile(std::move(y), spec.target);
    }
  }
  throw DomainError("process: unknown dependence case");
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> sample)
  : sorted_(sample.begin(), sample.end())
{
  if (sorted_.empty()) {
    throw DomainError("empirical cdf: sample is empty");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double
EmpiricalCdf::operator()(double t) const
{
  const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double
ks_two_sample(std::span<const double> a, std::span<const double> b)
{
  if (a.empty() || b.empty()) {
    throw DomainError("ks_two_sample: both samples must be non-empty");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double t = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= t) {
      ++i;
    }
    while (j < sb.size() && sb[j] <= t) {
      ++j;
    }
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double
ks_two_sample_pvalue(double statistic, std::size_t n_a, std::size_t n_b)
{
  const double ne = static_cast<double>(n_a) * static_cast<double>(n_b) /
                    static_cast<double>(n_a + n_b);
  // Stephens' small-sample correction of the Kolmogorov argument
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * statistic;
  if (lambda < 1e-3) {
    return 1.0;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) {
      break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

} // namespace glkde

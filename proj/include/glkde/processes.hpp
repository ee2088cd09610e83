#pragma once

#include "glkde/density.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace glkde {

enum class DependenceCase
{
  iid = 1,              ///< F^{-1}(U_i), U_i i.i.d. uniform
  lambda_noncausal = 2, ///< two-sided Bernoulli moving average
  arch = 3,             ///< ARCH(1) with normal innovations
};

DependenceCase dependence_case_from_int(int value);

struct ProcessSpec
{
  DependenceCase dependence = DependenceCase::iid;
  DensityModel target = make_density("f1");
  std::size_t n = 1000;
  std::uint64_t seed = 0;

  /// Case 2: coefficients a_j with |j| <= truncation_width are kept.
  int truncation_width = 40;

  /// Case 3: sigma_i^2 = gamma + alpha Y_{i-1}^2 + beta sigma_{i-1}^2.
  std::size_t burn_in = 1000;
  double alpha = 0.5;
  double beta = 0.0;
  double gamma = 0.5;
  /// Case 3: size of the independent run whose empirical cdf estimates G;
  /// 0 means "same as n".
  std::size_t auxiliary_sample_size = 0;

  void validate() const;
};

/// Draws n observations with marginal density `spec.target`.
std::vector<double> simulate(const ProcessSpec& spec);

/// Latent Case-2 process Y_i = sum_{|j|<=J} a_j xi_{i-j}, a_j = 2^{-|j|}/3,
/// xi_i Bernoulli(1/2).
std::vector<double> simulate_moving_average(std::size_t n, std::uint64_t seed, int truncation_width);

/// Latent ARCH/GARCH path after `burn_in` steps, started at the stationary
/// variance gamma / (1 - alpha - beta).
std::vector<double> simulate_arch(std::size_t n,
                                  std::uint64_t seed,
                                  std::size_t burn_in,
                                  double alpha,
                                  double beta,
                                  double gamma);

/// Coefficient a_j of the Case-2 moving-average representation.
double moving_average_coefficient(int j);

/// Marginal cdf of the Case-2 latent variable, i.e. of (U + U' + xi) / 3.
double marginal_g_case2(double y);

/// Right-continuous empirical distribution function.
class EmpiricalCdf
{
public:
  explicit EmpiricalCdf(std::span<const double> sample);

  double operator()(double t) const;
  std::size_t size() const { return sorted_.size(); }

private:
  std::vector<double> sorted_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup_t |F_a(t) - F_b(t)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic p-value of the two-sample KS statistic (Kolmogorov series).
double ks_two_sample_pvalue(double statistic, std::size_t n_a, std::size_t n_b);

} // namespace glkde

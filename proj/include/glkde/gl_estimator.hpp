#pragma once

#include "glkde/kernels.hpp"

#include <optional>
#include <span>
#include <vector>

namespace glkde {

/// Dyadic bandwidths 2^-k inside [h_star, h_upper], largest first, with
/// h_star = exp(sqrt(log n)) / n and h_upper = (log n)^(-1/q).
struct BandwidthGrid
{
  std::vector<double> bandwidths;
  double h_star = 0.0;
  double h_upper = 0.0;
  std::size_t n = 0;
  double q = 2.0;

  bool contains(double h) const;
  std::size_t size() const { return bandwidths.size(); }
};

/// Throws DomainError for n < 2 or q <= 0 and DegenerateGridError when no
/// dyadic bandwidth fits between h_star and h_upper.
BandwidthGrid build_grid(std::size_t n, double q);

struct GLConfig
{
  double q = 2.0;
  /// Replaces the default (log n)^(-1/2); 0 gives the i.i.d. variant.
  std::optional<double> delta_n_override;
  Kernel kernel = find_kernel("uniform");

  double delta_n(std::size_t n) const;
  void validate() const;
};

/// Per-bandwidth quantities at one evaluation point.
struct BandwidthDiagnostics
{
  double h;
  double f_hat_h;
  double j_hat_n;
  double m_hat_n;
  double a_term;

  double objective() const { return a_term + m_hat_n; }
};

struct PointEstimate
{
  double x0;
  double value;
  double h_hat;
  std::vector<BandwidthDiagnostics> per_h; ///< in grid order (descending h)
};

/// (1/n) sum_i K_h(x0 - X_i), summed in data order.
double kernel_estimate(std::span<const double> data, double h, double x0, const Kernel& kernel);

/// (1/n^2) sum_i K_h(x0 - X_i)^2, summed in data order.
double jn_hat(std::span<const double> data, double h, double x0, const Kernel& kernel);

/// Variance penalty sqrt(2 q |log h| (j_hat + delta_n / (n h))); requires
/// 0 < h < 1.
double mn_hat(double j_hat, double h, std::size_t n, const GLConfig& config);

/// A(h, x0): the largest positive excess of |f_{max(h,g)} - f_g| over the
/// threshold M(g) + M(max(h,g)), taken over every g in the grid.
double excess_deviation(std::span<const double> data,
                        double h,
                        double x0,
                        const BandwidthGrid& grid,
                        const GLConfig& config);

/// Minimizes A(h, x0) + M(h) over the grid built for n = data.size(). Ties go
/// to the largest bandwidth.
PointEstimate select_and_estimate(std::span<const double> data, double x0, const GLConfig& config);

/// Pointwise selection at every evaluation point, output in input order.
std::vector<PointEstimate> estimate_curve(std::span<const double> data,
                                          std::span<const double> eval_points,
                                          const GLConfig& config);

/// Same as estimate_curve with a grid that was already built.
std::vector<PointEstimate> estimate_curve(std::span<const double> data,
                                          std::span<const double> eval_points,
                                          const BandwidthGrid& grid,
                                          const GLConfig& config);

} // namespace glkde

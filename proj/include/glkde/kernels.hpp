#pragma once

#include "glkde/density.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glkde {

/// Analytic constants of a kernel on [-1, 1].
struct KernelConstants
{
  double l1_norm;
  double l2_norm_sq;
  double sup_norm;
  double lipschitz; ///< +inf for discontinuous kernels
  int order;
};

/// A compactly supported, piecewise polynomial smoothing kernel.
///
/// Instances are immutable; the registry kernels are verified against
/// numerical quadrature when the registry is first built.
class Kernel
{
public:
  using Profile = double (*)(double);

  Kernel(std::string name,
         Profile profile,
         KernelConstants constants,
         std::vector<double> knots,
         int polynomial_degree);

  const std::string& name() const { return name_; }
  double support_radius() const { return 1.0; }
  double l1_norm() const { return constants_.l1_norm; }
  double l2_norm_sq() const { return constants_.l2_norm_sq; }
  double sup_norm() const { return constants_.sup_norm; }
  double lipschitz() const { return constants_.lipschitz; }
  int order() const { return constants_.order; }
  const KernelConstants& constants() const { return constants_; }

  /// Points in [-1, 1] where the kernel is not a single polynomial.
  std::span<const double> knots() const { return knots_; }
  /// True when the kernel is constant on its support.
  bool piecewise_constant() const { return polynomial_degree_ == 0; }

  double operator()(double u) const { return profile_(u); }

  /// (K * K)(t) = integral of K(s) K(s - t) ds. Closed form for constant
  /// kernels, otherwise Gauss-Legendre on each polynomial piece (exact up to
  /// rounding for the registry kernels).
  double self_convolution(double t) const;

private:
  std::string name_;
  Profile profile_;
  KernelConstants constants_;
  std::vector<double> knots_;
  int polynomial_degree_;
};

/// K_h(u) = K(u / h) / h. Throws DomainError unless h > 0.
double evaluate_scaled(const Kernel& kernel, double h, double u);

/// uniform, triangular and epanechnikov, each with hand-derived constants.
const std::vector<Kernel>& registry();

/// Registry lookup by name; throws DomainError listing valid names.
const Kernel& find_kernel(std::string_view name);

/// Integral of K_h(x0 - x) f(x) dx, split at the density's breakpoints and
/// at the kernel knots mapped into the window. Absolute tolerance 1e-8.
double convolve_with_density(const Kernel& kernel,
                             double h,
                             const DensityModel& density,
                             double x0);

} // namespace glkde

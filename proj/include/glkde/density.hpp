#pragma once

#include "glkde/quadrature.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace glkde {

//! A probability density on [0, 1] with its cdf and quantile function.
//!
//! The cdf is tabulated once at construction: [0, 1] is cut into a fine
//! uniform mesh refined at the density's breakpoints, each cell's mass is
//! integrated with an 8-point Gauss-Legendre rule, and evaluation adds the
//! partial-cell integral to the cumulative table. Quantiles are found by a
//! binary search over the table followed by safeguarded Newton iterations
//! inside the bracketing cell.
//!
//! Copies share the immutable tabulation and are safe to use across threads.
class DensityModel
{
public:
  //! `pdf` must already integrate to one over [0, 1]; it is treated as zero
  //! outside. `breakpoints` lists kinks and jumps of the pdf. `normalizer` is
  //! the constant that was used to make the written form a density.
  DensityModel(std::string name,
               RealFunction pdf,
               std::vector<double> breakpoints,
               double normalizer);

  //! Divides `f` by its integral over [0, 1]; the normalizer is 1 / mass.
  static DensityModel from_unnormalized(std::string name,
                                        RealFunction f,
                                        std::vector<double> breakpoints);

  const std::string& name() const { return impl_->name; }
  double normalizer() const { return impl_->normalizer; }
  std::span<const double> breakpoints() const { return impl_->breakpoints; }
  double support_lower() const { return 0.0; }
  double support_upper() const { return 1.0; }

  double pdf(double x) const;
  double cdf(double x) const;
  //! Inverse cdf; u is clamped to [0, 1].
  double quantile(double u) const;

private:
  struct Impl
  {
    std::string name;
    RealFunction pdf;
    std::vector<double> breakpoints;
    double normalizer;
    std::vector<double> edges;
    std::vector<double> cumulative;
  };
  std::shared_ptr<const Impl> impl_;

  double partial_mass(std::size_t cell, double x) const;
};

//! Standard normal density and distribution function.
double normal_pdf(double z);
double normal_cdf(double z);

//! Builds one of the benchmark targets "f1", "f2", "f3".
//!
//! f1: 1.28 * (sin((3pi/2 - 1) x) on [0, 0.65] + 1 on (0.65, 1] + c), with c
//!     solved by normalization. The solution is negative, so the form dips
//!     below zero near the origin; the pdf is the positive part and c makes
//!     that positive part integrate to one.
//! f2: (mix of N(0.5, 0.1), N(0.6, 0.01), N(0.65, 0.95) with weights
//!     1/2, 1/4, 1/4) + c on [0, 1].
//! f3: five triangular spikes of width 0.1 and of height 2 on [0, 0.5] and a plateau of
//!     0.5 on (0.5, 1], rescaled by its total mass (normalizer = 4/3).
//!
//! Throws DomainError for any other name.
DensityModel make_density(std::string_view name);

} // namespace glkde

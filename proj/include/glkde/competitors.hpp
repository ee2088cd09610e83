#pragma once

#include "glkde/gl_estimator.hpp"

#include <span>
#include <vector>

namespace glkde {

enum class GlobalMethod
{
  CV,
  RT,
};

struct CriterionPoint
{
  double h;
  double score;
};

/// A single bandwidth used at every evaluation point.
struct GlobalBandwidth
{
  double h;
  GlobalMethod method;
  std::vector<CriterionPoint> criterion_trace; ///< CV only, grid order
};

/// The two parts of the least-squares cross-validation score
/// LSCV(h) = integral of f_h^2 - (2/n) sum_i f_h^{(-i)}(X_i).
struct LscvTerms
{
  double quadratic;      ///< integral of f_h^2
  double resubstitution; ///< (2/n) sum of leave-one-out estimates at the data

  double score() const { return quadratic - resubstitution; }
};

/// Requires n >= 2 and h > 0.
LscvTerms lscv_terms(std::span<const double> data, double h, const Kernel& kernel);

/// Argmin of LSCV over the grid; ties go to the largest bandwidth.
GlobalBandwidth cv_select(std::span<const double> data,
                          const BandwidthGrid& grid,
                          const Kernel& kernel);

/// Silverman's normal-reference rule 1.06 * min(sd, IQR / 1.34) * n^(-1/5).
/// Throws DegenerateDataError when the sample has no spread.
GlobalBandwidth rot_bandwidth(std::span<const double> data);

/// kernel_estimate at every evaluation point with one bandwidth.
std::vector<double> fixed_bandwidth_curve(std::span<const double> data,
                                          double h,
                                          std::span<const double> eval_points,
                                          const Kernel& kernel);

} // namespace glkde

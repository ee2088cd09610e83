#include "glkde/density.hpp"

#include "glkde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace glkde {

namespace {

constexpr std::size_t mesh_cells = 4096;

bool
inside_unit(double x)
{
  return x >= 0.0 && x <= 1.0;
}

} // namespace

double
normal_pdf(double z)
{
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double
normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

DensityModel::DensityModel(std::string name,
                           RealFunction pdf,
                           std::vector<double> breakpoints,
                           double normalizer)
{
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->pdf = std::move(pdf);
  impl->normalizer = normalizer;
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  impl->breakpoints = std::move(breakpoints);

  auto& edges = impl->edges;
  edges.reserve(mesh_cells + impl->breakpoints.size() + 1);
  for (std::size_t k = 0; k <= mesh_cells; ++k) {
    edges.push_back(static_cast<double>(k) / mesh_cells);
  }
  for (double b : impl->breakpoints) {
    if (b > 0.0 && b < 1.0) {
      edges.push_back(b);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const auto& f = impl->pdf;
  const auto density = [&f](double x) { return inside_unit(x) ? f(x) : 0.0; };
  auto& cumulative = impl->cumulative;
  cumulative.assign(edges.size(), 0.0);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double mass = gauss_legendre(density, edges[k], edges[k + 1], 8);
    if (mass < -1e-14) {
      throw DomainError("density '" + impl->name + "' is negative somewhere on [0, 1]");
    }
    cumulative[k + 1] = cumulative[k] + std::max(mass, 0.0);
  }
  const double total = cumulative.back();
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density '" << impl->name << "' integrates to " << total << ", not 1";
    throw DomainError(msg.str());
  }
  impl_ = std::move(impl);
}

DensityModel
DensityModel::from_unnormalized(std::string name, RealFunction f, std::vector<double> breakpoints)
{
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  const double mass = integrate_piecewise(f, 0.0, 1.0, breakpoints, opts);
  if (!(mass > 0.0)) {
    throw DomainError("density '" + name + "' has non-positive mass on [0, 1]");
  }
  const double scale = 1.0 / mass;
  return DensityModel(std::move(name),
                      [f = std::move(f), scale](double x) { return scale * f(x); },
                      std::move(breakpoints),
                      scale);
}

double
DensityModel::pdf(double x) const
{
  return inside_unit(x) ? impl_->pdf(x) : 0.0;
}

double
DensityModel::partial_mass(std::size_t cell, double x) const
{
  const double lo = impl_->edges[cell];
  if (x <= lo) {
    return 0.0;
  }
  const auto& f = impl_->pdf;
  return std::max(0.0, gauss_legendre([&f](double t) { return f(t); }, lo, x, 8));
}

double
DensityModel::cdf(double x) const
{
  if (!(x > 0.0)) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  const auto& edges = impl_->edges;
  const auto& cumulative = impl_->cumulative;
  const std::size_t cell =
    static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) - edges.begin()) - 1;
  const double value = cumulative[cell] + partial_mass(cell, x);
  return std::clamp(value / cumulative.back(), 0.0, 1.0);
}

double
DensityModel::quantile(double u) const
{
  if (!(u > 0.0)) {
    return 0.0;
  }
  if (u >= 1.0) {
    return 1.0;
  }
  const auto& edges = impl_->edges;
  const auto& cumulative = impl_->cumulative;
  const double target = u * cumulative.back();
  std::size_t cell = static_cast<std::size_t>(
    std::upper_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
  cell = std::clamp<std::size_t>(cell, 1, cumulative.size() - 1) - 1;

  // Safeguarded Newton on g(x) = mass(lo, x) - residual inside the cell.
  double lo = edges[cell];
  double hi = edges[cell + 1];
  const double residual = target - cumulative[cell];
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double g = partial_mass(cell, x) - residual;
    if (std::abs(g) <= 1e-15) {
      return x;
    }
    if (g > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo <= 1e-13) {
      return 0.5 * (lo + hi);
    }
    const double slope = impl_->pdf(x);
    double next = slope > 0.0 ? x - g / slope : lo - 1.0;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "quantile of '" << impl_->name << "' at u = " << u << " did not converge";
  throw NumericalError(msg.str());
}

DensityModel
make_density(std::string_view name)
{
  if (name == "f1") {
    static const DensityModel f1 = [] {
      const double rate = 1.5 * std::numbers::pi - 1.0;
      const auto shape = [rate](double x) { return x <= 0.65 ? std::sin(rate * x) : 1.0; };
      // Mass of the positive part of 1.28 * (shape + c); nondecreasing in c.
      QuadratureOptions opts;
      opts.abs_tol = 1e-14;
      const auto mass = [&](double c) {
        std::vector<double> cuts{0.65};
        if (c < 0.0 && -c < 1.0) {
          cuts.push_back(std::asin(-c) / rate);
        }
        return integrate_piecewise(
          [&](double x) { return std::max(0.0, 1.28 * (shape(x) + c)); }, 0.0, 1.0, cuts, opts);
      };
      double lo = -0.5;
      double hi = 0.5;
      for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) < 1.0 ? lo : hi) = mid;
      }
      const double c = 0.5 * (lo + hi);
      std::vector<double> cuts{0.0, 0.65, 1.0};
      if (c < 0.0) {
        cuts.push_back(std::asin(-c) / rate);
      }
      return DensityModel(
        "f1", [shape, c](double x) { return std::max(0.0, 1.28 * (shape(x) + c)); }, cuts, c);
    }();
    return f1;
  }
  if (name == "f2") {
    static const DensityModel f2 = [] {
      const auto mixture = [](double x) {
        return 0.5 * normal_pdf((x - 0.5) / 0.1) / 0.1 +
               0.25 * normal_pdf((x - 0.6) / 0.01) / 0.01 +
               0.25 * normal_pdf((x - 0.65) / 0.95) / 0.95;
      };
      const std::vector<double> cuts{0.0, 0.55, 0.6, 0.65, 1.0};
      QuadratureOptions opts;
      opts.abs_tol = 1e-13;
      const double c = 1.0 - integrate_piecewise(mixture, 0.0, 1.0, cuts, opts);
      return DensityModel("f2", [mixture, c](double x) { return mixture(x) + c; }, cuts, c);
    }();
    return f2;
  }
  if (name == "f3") {
    static const DensityModel f3 = [] {
      const auto written = [](double x) {
        if (x > 0.5) {
          return 0.5;
        }
        if (x <= 0.0) {
          return 0.0;
        }
        // spike k covers ((k-1)/10, k/10]
        const int k = std::clamp(static_cast<int>(std::ceil(x * 10.0)), 1, 5);
        return std::max(0.0, 2.0 - 40.0 * std::abs(x - k / 10.0 + 1.0 / 20.0));
      };
      std::vector<double> cuts;
      for (int k = 0; k <= 20; ++k) {
        cuts.push_back(k / 20.0);
      }
      return DensityModel::from_unnormalized("f3", written, cuts);
    }();
    return f3;
  }
  throw DomainError("unknown density '" + std::string(name) + "' (known: f1, f2, f3)");
}

} // namespace glkde

#pragma once

#include <functional>
#include <span>

namespace glkde {

using RealFunction = std::function<double(double)>;

struct QuadratureOptions
{
  double abs_tol = 1e-8;
  //! Maximal bisection depth of a single subinterval.
  int max_depth = 50;
  //! Each piece is split into this many panels before adaptation starts, so
  //! narrow features are not missed by the first Simpson estimate.
  int initial_panels = 8;
};

//! Adaptive Simpson quadrature of `f` over [a, b] with Richardson correction.
//! Throws NumericalError (with the offending interval) if a subinterval hits
//! `max_depth` without meeting its share of the tolerance.
double integrate(const RealFunction& f,
                 double a,
                 double b,
                 const QuadratureOptions& opts = {});

//! Integrates piece by piece between consecutive `breakpoints` that fall in
//! (a, b). Breakpoints need not be sorted or restricted to [a, b].
double integrate_piecewise(const RealFunction& f,
                           double a,
                           double b,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {});

//! Fixed-order Gauss-Legendre rule on [a, b]; exact for polynomials of degree
//! up to 2 * order - 1. Supported orders: 5 and 8.
double gauss_legendre(const RealFunction& f, double a, double b, int order = 8);

} // namespace glkde

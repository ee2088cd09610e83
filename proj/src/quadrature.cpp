#include "glkde/quadrature.hpp"

#include "glkde/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace glkde {

namespace {

struct SimpsonPanel
{
  double a, b;
  double fa, fm, fb;
  double whole;
};

double
simpson(double a, double b, double fa, double fm, double fb)
{
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double
adapt(const RealFunction& f,
      const SimpsonPanel& p,
      double tol,
      int depth,
      const QuadratureOptions& opts)
{
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  // Cut points that differ by rounding leave ulp-wide slivers around a jump;
  // they cannot be refined further, so only the global tolerance applies.
  const double scale = std::max({1.0, std::abs(p.a), std::abs(p.b)});
  if (p.b - p.a <= 64.0 * std::numeric_limits<double>::epsilon() * scale &&
      std::abs(delta) <= opts.abs_tol) {
    return left + right;
  }
  if (depth >= opts.max_depth || m <= p.a || m >= p.b) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "adaptive Simpson did not converge on [" << p.a << ", " << p.b
        << "] at depth " << depth << " (error estimate " << std::abs(delta) / 15.0
        << ", tolerance " << tol << ")";
    throw NumericalError(msg.str());
  }
  return adapt(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1, opts) +
         adapt(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1, opts);
}

} // namespace

double
integrate(const RealFunction& f, double a, double b, const QuadratureOptions& opts)
{
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (a == b) {
    return 0.0;
  }
  if (b < a) {
    return -integrate(f, b, a, opts);
  }
  const int panels = std::max(1, opts.initial_panels);
  const double width = (b - a) / panels;
  const double tol = opts.abs_tol / panels;
  double total = 0.0;
  double lo = a;
  double flo = f(lo);
  for (int k = 0; k < panels; ++k) {
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * width;
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    const double fhi = f(hi);
    total += adapt(f, {lo, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi)},
                   tol, 0, opts);
    lo = hi;
    flo = fhi;
  }
  return total;
}

double
integrate_piecewise(const RealFunction& f,
                    double a,
                    double b,
                    std::span<const double> breakpoints,
                    const QuadratureOptions& opts)
{
  if (b < a) {
    return -integrate_piecewise(f, b, a, breakpoints, opts);
  }
  if (a == b) {
    return 0.0;
  }
  std::vector<double> knots{a};
  for (double x : breakpoints) {
    if (x > a && x < b) {
      knots.push_back(x);
    }
  }
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  QuadratureOptions piece_opts = opts;
  piece_opts.abs_tol = opts.abs_tol / static_cast<double>(knots.size() - 1);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    total += integrate(f, knots[k], knots[k + 1], piece_opts);
  }
  return total;
}

double
gauss_legendre(const RealFunction& f, double a, double b, int order)
{
  static constexpr std::array<double, 3> nodes5{
    0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 3> weights5{
    0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
  static constexpr std::array<double, 4> nodes8{
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> weights8{
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

  const double half = 0.5 * (b - a);
  const double centre = 0.5 * (a + b);
  double sum = 0.0;
  if (order == 5) {
    sum = weights5[0] * f(centre);
    for (std::size_t k = 1; k < nodes5.size(); ++k) {
      sum += weights5[k] * (f(centre - half * nodes5[k]) + f(centre + half * nodes5[k]));
    }
  } else if (order == 8) {
    for (std::size_t k = 0; k < nodes8.size(); ++k) {
      sum += weights8[k] * (f(centre - half * nodes8[k]) + f(centre + half * nodes8[k]));
    }
  } else {
    throw DomainError("gauss_legendre: supported orders are 5 and 8");
  }
  return half * sum;
}

} // namespace glkde

#include "glkde/kernels.hpp"

#include "glkde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace glkde {

namespace {

double
uniform_profile(double u)
{
  return std::abs(u) <= 1.0 ? 0.5 : 0.0;
}

double
triangular_profile(double u)
{
  const double a = std::abs(u);
  return a <= 1.0 ? 1.0 - a : 0.0;
}

double
epanechnikov_profile(double u)
{
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

// Cross-checks the hand-derived constants against quadrature; a mismatch is a
// programming error in the table below.
void
verify_constants(const Kernel& k)
{
  const auto fail = [&](const std::string& what, double stored, double numeric) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "kernel '" << k.name() << "': stored " << what << " = " << stored
        << " disagrees with quadrature value " << numeric;
    throw NumericalError(msg.str());
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  const auto knots = k.knots();
  const double mass = integrate_piecewise([&](double u) { return k(u); }, -1.0, 1.0, knots, opts);
  if (std::abs(mass - 1.0) > 1e-9) {
    fail("integral", 1.0, mass);
  }
  const double l1 =
    integrate_piecewise([&](double u) { return std::abs(k(u)); }, -1.0, 1.0, knots, opts);
  if (std::abs(l1 - k.l1_norm()) > 1e-6) {
    fail("l1 norm", k.l1_norm(), l1);
  }
  const double l2 =
    integrate_piecewise([&](double u) { return k(u) * k(u); }, -1.0, 1.0, knots, opts);
  if (std::abs(l2 - k.l2_norm_sq()) > 1e-6) {
    fail("squared l2 norm", k.l2_norm_sq(), l2);
  }
  double sup = 0.0;
  for (int i = -100000; i <= 100000; ++i) {
    sup = std::max(sup, std::abs(k(i * 1e-5)));
  }
  if (std::abs(sup - k.sup_norm()) > 1e-6) {
    fail("sup norm", k.sup_norm(), sup);
  }
}

} // namespace

Kernel::Kernel(std::string name,
               Profile profile,
               KernelConstants constants,
               std::vector<double> knots,
               int polynomial_degree)
  : name_(std::move(name))
  , profile_(profile)
  , constants_(constants)
  , knots_(std::move(knots))
  , polynomial_degree_(polynomial_degree)
{
  if (polynomial_degree_ < 0 || polynomial_degree_ > 4) {
    throw DomainError("kernel '" + name_ + "': piecewise degree must lie in [0, 4]");
  }
}

double
Kernel::self_convolution(double t) const
{
  const double a = std::abs(t);
  if (a >= 2.0) {
    return 0.0;
  }
  if (piecewise_constant()) {
    const double height = (*this)(0.0);
    return height * height * (2.0 - a);
  }
  const double lo = std::max(-1.0, t - 1.0);
  const double hi = std::min(1.0, t + 1.0);
  std::vector<double> cuts{lo, hi};
  for (double k : knots_) {
    cuts.push_back(k);
    cuts.push_back(k + t);
  }
  std::sort(cuts.begin(), cuts.end());
  const auto product = [&](double s) { return (*this)(s) * (*this)(s - t); };
  double total = 0.0;
  double prev = lo;
  for (double c : cuts) {
    if (c <= prev) {
      continue;
    }
    if (c > hi) {
      break;
    }
    total += gauss_legendre(product, prev, c, 5);
    prev = c;
  }
  return total;
}

double
evaluate_scaled(const Kernel& kernel, double h, double u)
{
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg << "bandwidth must be positive, got " << h;
    throw DomainError(msg.str());
  }
  return kernel(u / h) / h;
}

const std::vector<Kernel>&
registry()
{
  static const std::vector<Kernel> kernels = [] {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Kernel> ks{
      Kernel("uniform", uniform_profile, {1.0, 0.5, 0.5, inf, 1}, {-1.0, 1.0}, 0),
      Kernel("triangular", triangular_profile, {1.0, 2.0 / 3.0, 1.0, 1.0, 1}, {-1.0, 0.0, 1.0}, 1),
      Kernel("epanechnikov", epanechnikov_profile, {1.0, 0.6, 0.75, 1.5, 1}, {-1.0, 1.0}, 2),
    };
    for (const auto& k : ks) {
      verify_constants(k);
    }
    return ks;
  }();
  return kernels;
}

const Kernel&
find_kernel(std::string_view name)
{
  for (const auto& k : registry()) {
    if (k.name() == name) {
      return k;
    }
  }
  std::string known;
  for (const auto& k : registry()) {
    known += (known.empty() ? "" : ", ") + k.name();
  }
  throw DomainError("unknown kernel '" + std::string(name) + "' (known: " + known + ")");
}

double
convolve_with_density(const Kernel& kernel, double h, const DensityModel& density, double x0)
{
  if (!(h > 0.0)) {
    throw DomainError("convolve_with_density: bandwidth must be positive");
  }
  const double lo = std::max(x0 - h * kernel.support_radius(), density.support_lower());
  const double hi = std::min(x0 + h * kernel.support_radius(), density.support_upper());
  if (!(lo < hi)) {
    return 0.0;
  }
  std::vector<double> cuts(density.breakpoints().begin(), density.breakpoints().end());
  for (double k : kernel.knots()) {
    cuts.push_back(x0 - h * k);
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-8;
  return integrate_piecewise(
    [&](double x) { return evaluate_scaled(kernel, h, x0 - x) * density.pdf(x); },
    lo,
    hi,
    cuts,
    opts);
}

} // namespace glkde

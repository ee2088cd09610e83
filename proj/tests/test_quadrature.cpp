#include "glkde/errors.hpp"
#include "glkde/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace glkde;

TEST(Quadrature, IntegratesSmoothFunctions)
{
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 1.0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-8);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0),
              std::sqrt(std::numbers::pi),
              1e-8);
}

TEST(Quadrature, ReversedAndEmptyIntervals)
{
  const auto f = [](double x) { return 3.0 * x * x; };
  EXPECT_NEAR(integrate(f, 1.0, 0.0), -1.0, 1e-12);
  EXPECT_EQ(integrate(f, 0.5, 0.5), 0.0);
  EXPECT_EQ(integrate_piecewise(f, 0.5, 0.5, std::vector<double>{0.5}), 0.0);
}

TEST(Quadrature, PiecewiseHandlesJumps)
{
  // step of height 1 at an irrational point
  const double jump = 1.0 / std::numbers::sqrt2;
  const auto step = [jump](double x) { return x < jump ? 0.0 : 1.0; };
  const std::vector<double> cuts{jump, -3.0, 7.0};
  EXPECT_NEAR(integrate_piecewise(step, 0.0, 1.0, cuts), 1.0 - jump, 1e-14);
}

TEST(Quadrature, NonConvergenceReportsInterval)
{
  QuadratureOptions opts;
  opts.max_depth = 4;
  opts.abs_tol = 1e-12;
  try {
    integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("did not converge"), std::string::npos);
  }
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials)
{
  const auto p9 = [](double x) { return std::pow(x, 9) - 2.0 * std::pow(x, 4) + x; };
  const double exact = (std::pow(2.0, 10) - 1.0) / 10.0 - 2.0 * (std::pow(2.0, 5) - 1.0) / 5.0 + 1.5;
  EXPECT_NEAR(gauss_legendre(p9, 1.0, 2.0, 5), exact, 1e-10);
  const auto p15 = [](double x) { return std::pow(x, 15); };
  EXPECT_NEAR(gauss_legendre(p15, 0.0, 1.0, 8), 1.0 / 16.0, 1e-14);
  EXPECT_THROW(gauss_legendre(p15, 0.0, 1.0, 3), DomainError);
}

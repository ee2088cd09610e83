#include "glkde/competitors.hpp"
#include "glkde/errors.hpp"
#include "glkde/processes.hpp"
#include "glkde/quadrature.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace glkde;

namespace {

std::vector<double>
draw(const char* density, std::size_t n, std::uint64_t seed)
{
  ProcessSpec s;
  s.dependence = DependenceCase::iid;
  s.target = make_density(density);
  s.n = n;
  s.seed = seed;
  return simulate(s);
}

// integral of f_h^2 by quadrature over the pieces where f_h is smooth, plus
// a direct leave-one-out double loop
double
brute_force_lscv(const std::vector<double>& x, double h, const Kernel& k)
{
  const double n = static_cast<double>(x.size());
  auto f = [&](double t) {
    double s = 0.0;
    for (double xi : x) {
      s += k((t - xi) / h) / h;
    }
    return s / n;
  };
  std::vector<double> cuts;
  for (double xi : x) {
    for (double knot : k.knots()) {
      cuts.push_back(xi + h * knot);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  const double quad =
    integrate_piecewise([&](double t) { return f(t) * f(t); }, cuts.front(), cuts.back(), cuts, opts);
  double loo = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j != i) {
        s += k((x[i] - x[j]) / h) / h;
      }
    }
    loo += s / (n - 1.0);
  }
  return quad - 2.0 * loo / n;
}

BandwidthGrid
manual_grid(std::vector<double> hs)
{
  BandwidthGrid g;
  g.bandwidths = std::move(hs);
  g.h_star = g.bandwidths.back();
  g.h_upper = g.bandwidths.front();
  g.q = 2.0;
  return g;
}

} // namespace

TEST(Lscv, TwoPointExample)
{
  const Kernel& u = find_kernel("uniform");
  const std::vector<double> x{0.4, 0.6};
  const auto t1 = lscv_terms(x, 0.5, u);
  EXPECT_NEAR(t1.quadratic, 0.9, 1e-14);
  EXPECT_NEAR(t1.resubstitution, 2.0, 1e-14);
  EXPECT_NEAR(t1.score(), -1.1, 1e-14);
  const auto t2 = lscv_terms(x, 0.25, u);
  EXPECT_NEAR(t2.score(), -2.4, 1e-14);

  const auto sel = cv_select(x, manual_grid({0.5, 0.25}), u);
  EXPECT_EQ(sel.h, 0.25);
  EXPECT_EQ(sel.method, GlobalMethod::CV);
  ASSERT_EQ(sel.criterion_trace.size(), 2U);
  EXPECT_EQ(sel.criterion_trace[0].h, 0.5);
  EXPECT_NEAR(sel.criterion_trace[0].score, -1.1, 1e-14);
}

TEST(Lscv, MatchesBruteForceOnSmallSamples)
{
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int instance = 0; instance < 60; ++instance) {
    const Kernel& k = registry()[instance % registry().size()];
    std::vector<double> x(2 + instance % 15);
    for (double& v : x) {
      v = unit(gen);
    }
    if (instance % 7 == 0) {
      x[1] = x[0]; // exact ties
    }
    for (double h : {0.5, 0.25, 0.125, 0.03125}) {
      EXPECT_NEAR(lscv_terms(x, h, k).score(), brute_force_lscv(x, h, k), 1e-10)
        << k.name() << " n=" << x.size() << " h=" << h;
    }
  }
}

TEST(Lscv, PermutationInvariant)
{
  auto x = draw("f2", 300, 3);
  const Kernel& e = find_kernel("epanechnikov");
  const auto before = lscv_terms(x, 0.0625, e);
  std::mt19937_64 gen(1);
  std::shuffle(x.begin(), x.end(), gen);
  const auto after = lscv_terms(x, 0.0625, e);
  EXPECT_EQ(before.quadratic, after.quadratic);
  EXPECT_EQ(before.resubstitution, after.resubstitution);
}

TEST(Lscv, Errors)
{
  const Kernel& u = find_kernel("uniform");
  EXPECT_THROW(lscv_terms(std::vector<double>{0.5}, 0.25, u), DomainError);
  EXPECT_THROW(lscv_terms(std::vector<double>{0.5, 0.6}, 0.0, u), DomainError);
}

TEST(CvSelect, ArgminOverTrace)
{
  const auto grid = build_grid(1000, 2.0);
  for (const char* density : {"f1", "f2", "f3"}) {
    const auto x = draw(density, 1000, 17);
    const auto sel = cv_select(x, grid, find_kernel("uniform"));
    ASSERT_EQ(sel.criterion_trace.size(), grid.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : sel.criterion_trace) {
      best = std::min(best, p.score);
    }
    for (const auto& p : sel.criterion_trace) {
      if (p.h == sel.h) {
        EXPECT_EQ(p.score, best);
      } else if (p.h > sel.h) {
        EXPECT_GT(p.score, best);
      }
    }
    EXPECT_TRUE(grid.contains(sel.h));
  }
}

TEST(Rot, TwoPointExample)
{
  const std::size_t n = 1000;
  const double a = std::sqrt((n - 1.0) / n);
  std::vector<double> x;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(i % 2 == 0 ? a : -a);
  }
  const auto r = rot_bandwidth(x);
  EXPECT_EQ(r.method, GlobalMethod::RT);
  EXPECT_TRUE(r.criterion_trace.empty());
  EXPECT_NEAR(r.h, 1.06 * std::pow(1000.0, -0.2), 1e-12);
  EXPECT_NEAR(r.h, 0.26626, 1e-5);
}

TEST(Rot, IqrBranch)
{
  // heavy tails: IQR / 1.34 is the smaller spread measure
  std::vector<double> x;
  for (int i = 0; i < 97; ++i) {
    x.push_back(i / 96.0);
  }
  x.push_back(1000.0);
  x.push_back(-1000.0);
  x.push_back(500.0);
  // type 7 quartiles at positions 24.75 and 74.25 of the sorted sample
  std::vector<double> s = x;
  std::sort(s.begin(), s.end());
  const double q1 = s[24] + 0.75 * (s[25] - s[24]);
  const double q3 = s[74] + 0.25 * (s[75] - s[74]);
  const double expected = 1.06 * (q3 - q1) / 1.34 * std::pow(100.0, -0.2);
  EXPECT_NEAR(rot_bandwidth(x).h, expected, 1e-12);
}

TEST(Rot, ScaleEquivariant)
{
  const auto x = draw("f1", 500, 2);
  std::vector<double> y(x);
  for (double& v : y) {
    v *= 2.0;
  }
  EXPECT_EQ(rot_bandwidth(y).h, 2.0 * rot_bandwidth(x).h);
}

TEST(Rot, Errors)
{
  EXPECT_THROW(rot_bandwidth(std::vector<double>(50, 0.3)), DegenerateDataError);
  EXPECT_THROW(rot_bandwidth(std::vector<double>{0.3}), DomainError);
  EXPECT_THROW(rot_bandwidth(std::vector<double>{}), DomainError);
}

TEST(FixedBandwidthCurve, MatchesPointwiseEstimate)
{
  const auto x = draw("f3", 400, 6);
  const std::vector<double> pts{-0.5, 0.0, 0.21, 0.5, 0.99, 1.7};
  for (const Kernel& k : registry()) {
    const auto curve = fixed_bandwidth_curve(x, 0.1, pts, k);
    ASSERT_EQ(curve.size(), pts.size());
    EXPECT_EQ(curve[0], 0.0);
    EXPECT_EQ(curve[5], 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_NEAR(curve[i], kernel_estimate(x, 0.1, pts[i], k), 1e-12);
    }
  }
}

TEST(FixedBandwidthCurve, RotOversmoothsTheMixture)
{
  // the two narrow bumps of f2 make the normal reference rule far too wide
  const auto truth = make_density("f2");
  const auto grid = build_grid(1000, 2.0);
  std::vector<double> pts(201);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = i / 200.0;
  }
  auto sq_error = [&](const std::vector<double>& curve) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = curve[i] - truth.pdf(pts[i]);
      s += (i == 0 || i + 1 == pts.size() ? 0.5 : 1.0) * d * d;
    }
    return s / 200.0;
  };
  double cv = 0.0;
  double rt = 0.0;
  const Kernel& u = find_kernel("uniform");
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = draw("f2", 1000, 500 + rep);
    cv += sq_error(fixed_bandwidth_curve(x, cv_select(x, grid, u).h, pts, u));
    rt += sq_error(fixed_bandwidth_curve(x, rot_bandwidth(x).h, pts, u));
  }
  EXPECT_GT(rt, 2.0 * cv);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pwd/verify.hpp"

using namespace pwd;
using namespace pwd::verify;
using spectral::OperatorSpec;

namespace {

GridSpec cube(double lo, double hi, std::size_t n) {
  return GridSpec({Axis{"x", lo, hi, n}, Axis{"y", lo, hi, n}, Axis{"z", lo, hi, n}});
}

GridSpec plane(double lo, double hi, std::size_t n) {
  return GridSpec({Axis{"x", lo, hi, n}, Axis{"y", lo, hi, n}});
}

ScalarField from(const GridSpec& g, const std::function<double(const GridPoint&)>& f) {
  return ScalarField::generate(g, [&](const GridPoint& p) { return cplx(f(p)); });
}

// Residual at the grid centre; interior edges move with h and bias linf slopes.
double centre_residual(const ResidualReport& r) {
  return std::abs(r.residual[r.residual.size() / 2]);
}

}  // namespace

TEST(FdResidual, LinearFieldIsExact) {
  const auto g = cube(-1, 1, 7);
  const auto r = fd_residual(from(g, [](const GridPoint& p) { return p[2]; }), OperatorSpec::laplace(3));
  EXPECT_EQ(r.residual.size(), 125u);
  EXPECT_LT(r.linf, 1e-13);
}

TEST(FdResidual, QuadraticGivesTwo) {
  const auto g = plane(-1, 1, 9);
  const auto r = fd_residual(from(g, [](const GridPoint& p) { return p[0] * p[0]; }),
                             AxisCoefficients{{"x", 1.0}, {"y", 1.0}});
  for (const auto& v : r.residual.values()) EXPECT_NEAR(std::abs(v - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(r.l2, 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.h[0], 0.25);
}

TEST(FdResidual, CubicsExactPerAxis) {
  const auto g = cube(-1, 1, 9);
  const auto f = from(g, [](const GridPoint& p) {
    return p[0] * p[0] * p[0] - 3 * p[0] * p[1] * p[1] + p[1] * p[2] * p[2] * p[2] / 3.0 -
           p[1] * p[1] * p[1] * p[2] / 3.0;
  });
  // x^3 - 3xy^2 is harmonic; y z^3/3 - y^3 z/3 has Laplacian 2yz - 2yz = 0
  EXPECT_LT(fd_residual(f, OperatorSpec::laplace(3)).linf, 1e-12);
}

TEST(FdResidual, SmoothFieldOrderTwo) {
  std::vector<std::pair<double, double>> series;
  for (std::size_t n : {9u, 17u, 33u}) {
    const GridSpec g({Axis{"x", 0, 1, n}, Axis{"z", 0, 1, n}});
    const auto f = from(g, [](const GridPoint& p) { return std::sin(p[0]) * std::sinh(p[1]); });
    series.emplace_back(g.axis(0).spacing(),
                        fd_residual(f, AxisCoefficients{{"x", 1.0}, {"z", 1.0}}).linf);
  }
  EXPECT_NEAR(convergence_slope(series), 2.0, 0.2);
}

namespace {

// sin x sin y sinh(sqrt2 z): harmonic, and its sixth derivatives do not cancel
// across axes, so the 5-point stencil shows its h^4 term.
ScalarField separable_harmonic(std::size_t n) {
  return from(cube(0, 1, n), [](const GridPoint& p) {
    return std::sin(p[0]) * std::sin(p[1]) * std::sinh(std::sqrt(2.0) * p[2]);
  });
}

}  // namespace

TEST(FdResidual, FourthOrderStencil) {
  std::vector<std::pair<double, double>> second, fourth;
  for (std::size_t n : {9u, 17u, 33u}) {
    const auto f = separable_harmonic(n);
    const double h = f.grid().axis(0).spacing();
    second.emplace_back(h, centre_residual(fd_residual(f, OperatorSpec::laplace(3))));
    fourth.emplace_back(
        h, centre_residual(fd_residual(f, coefficients_for(OperatorSpec::laplace(3), f.grid()), 4)));
  }
  EXPECT_NEAR(convergence_slope(second), 2.0, 0.2);
  EXPECT_NEAR(convergence_slope(fourth), 4.0, 0.3);
}

TEST(FdResidual, CylindricalForm) {
  // r^2 - 2 z^2 is axisymmetric harmonic: (d_rr + d_r / r) r^2 = 4, d_zz = -4
  const GridSpec g({Axis{"r", 0.5, 1.5, 9}, Axis{"z", -1, 1, 9}});
  const auto f = from(g, [](const GridPoint& p) { return p[0] * p[0] - 2 * p[1] * p[1]; });
  EXPECT_LT(fd_residual(f, AxisCoefficients{{"r", 1.0}, {"z", 1.0}}).linf, 1e-12);
  const GridSpec axis({Axis{"r", 0, 1, 9}, Axis{"z", -1, 1, 9}});
  try {
    fd_residual(ScalarField::zeros(axis), AxisCoefficients{{"r", 1.0}, {"z", 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(FdResidual, Preconditions) {
  EXPECT_THROW(fd_residual(ScalarField::zeros(plane(0, 1, 4)), OperatorSpec::laplace(2)), Error);
  EXPECT_THROW(fd_residual(ScalarField::zeros(plane(0, 1, 5)), AxisCoefficients{{"x", 1.0}}),
               Error);
  EXPECT_THROW(fd_residual(ScalarField::zeros(plane(0, 1, 5)), OperatorSpec::laplace(2), 3),
               Error);
}

TEST(HarmonicOracle, LowDegreeExamples) {
  const auto g = cube(-1, 1, 5);
  const auto f0 = sample_analytic(harmonic_poly_oracle(0).field, g);
  const auto f1 = sample_analytic(harmonic_poly_oracle(1).field, g);
  const auto f2 = sample_analytic(harmonic_poly_oracle(2).field, g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const auto p = g.point(n);
    EXPECT_NEAR(std::abs(f0[n] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f1[n] - p[2]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f2[n] - (p[2] * p[2] - 0.5 * (p[0] * p[0] + p[1] * p[1]))), 0.0,
                1e-14);
  }
  const auto prof = harmonic_poly_oracle(3).profile;
  EXPECT_NEAR(std::abs(prof.at(2.0) - 8.0 / (2 * std::numbers::pi)), 0.0, 1e-15);
  EXPECT_THROW(harmonic_poly_oracle(7), Error);
  EXPECT_THROW(harmonic_poly_oracle(-1), Error);
}

TEST(HarmonicOracle, DiscreteLaplacianVanishesWhereStencilIsExact) {
  // Second-order stencils are exact to degree 3, fourth-order to degree 5.
  const auto g = cube(-1, 1, 9);
  for (int n = 0; n <= 5; ++n) {
    const auto f = sample_analytic(harmonic_poly_oracle(n).field, g);
    if (n <= 3) EXPECT_LT(fd_residual(f, OperatorSpec::laplace(3)).linf, 1e-11) << n;
    EXPECT_LT(fd_residual(f, coefficients_for(OperatorSpec::laplace(3), g), 4).linf, 1e-10)
        << n;
  }
}

TEST(HarmonicOracle, HigherDegreeResidualIsTruncationOnly) {
  for (int n : {4, 6}) {
    std::vector<std::pair<double, double>> series;
    for (std::size_t pts : {9u, 17u, 33u}) {
      const GridSpec g({Axis{"x", 0.1, 1.1, pts}, Axis{"y", -0.3, 0.7, pts},
                        Axis{"z", 0.4, 1.4, pts}});
      const auto f = sample_analytic(harmonic_poly_oracle(n).field, g);
      series.emplace_back(g.axis(0).spacing(),
                          centre_residual(fd_residual(f, OperatorSpec::laplace(3))));
    }
    EXPECT_NEAR(convergence_slope(series), 2.0, 0.1) << n;
  }
}

TEST(CompareFields, Examples) {
  const auto g = plane(0, 1, 5);
  const auto a = from(g, [](const GridPoint& p) { return p[0] + 2 * p[1]; });
  const auto same = compare_fields(a, a);
  EXPECT_EQ(same.linf_abs, 0.0);
  EXPECT_EQ(same.linf_rel, 0.0);
  EXPECT_EQ(same.l2_rel, 0.0);
  std::vector<cplx> shifted(a.values().begin(), a.values().end());
  for (auto& v : shifted) v += cplx(0.3, -0.4);
  EXPECT_NEAR(compare_fields(ScalarField(g, shifted), a).linf_abs, 0.5, 1e-15);
  EXPECT_THROW(compare_fields(a, ScalarField::zeros(plane(0, 1, 6))), Error);
}

TEST(CompareFields, ZeroReferenceUsesFloor) {
  const auto g = plane(0, 1, 3);
  const auto z = ScalarField::zeros(g);
  const auto r = compare_fields(z, z);
  EXPECT_EQ(r.linf_rel, 0.0);
  EXPECT_TRUE(std::isfinite(compare_fields(from(g, [](const GridPoint&) { return 1e-40; }), z)
                                .linf_rel));
}

TEST(CompareFields, Pseudometric) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  const auto g = plane(0, 1, 6);
  auto random_field = [&] {
    std::vector<cplx> v(g.size());
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    return ScalarField(g, std::move(v));
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_field(), b = random_field(), c = random_field();
    const double ab = compare_fields(a, b).linf_abs, ba = compare_fields(b, a).linf_abs;
    const double bc = compare_fields(b, c).linf_abs, ac = compare_fields(a, c).linf_abs;
    EXPECT_EQ(ab, ba);
    EXPECT_LE(ac, ab + bc + 1e-12);
  }
}

TEST(ConvergenceSlope, ExactPowerLaws) {
  std::vector<std::pair<double, double>> quad, lin;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    quad.emplace_back(h, 3 * h * h);
    lin.emplace_back(h, 0.5 * h);
  }
  EXPECT_NEAR(convergence_slope(quad), 2.0, 1e-12);
  EXPECT_NEAR(convergence_slope(lin), 1.0, 1e-12);
}

TEST(ConvergenceSlope, Preconditions) {
  EXPECT_THROW(convergence_slope({{0.1, 1.0}, {0.05, 0.5}}), Error);
  EXPECT_THROW(convergence_slope({{0.1, 1.0}, {0.05, 0.0}, {0.025, 0.1}}), Error);
  EXPECT_THROW(convergence_slope({{0.1, 1.0}, {0.2, 0.5}, {0.05, 0.1}}), Error);
}

TEST(LoglogSlope, FitsPowerLaw) {
  std::vector<std::pair<double, double>> xy;
  for (double m : {16.0, 64.0, 256.0, 1024.0}) xy.emplace_back(m, 7.0 / std::sqrt(m));
  EXPECT_NEAR(loglog_slope(xy), -0.5, 1e-12);
}

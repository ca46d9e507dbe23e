#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "pwd/fields.hpp"
#include "pwd/interp.hpp"
#include "pwd/quadrature.hpp"

using namespace pwd;

namespace {

GridSpec line(double a, double b, std::size_t n, const char* name = "x") {
  return GridSpec({Axis{name, a, b, n}});
}

}  // namespace

TEST(GridSpec, SpacingAndRowMajorOrder) {
  GridSpec g({Axis{"t", 0, 1, 3}, Axis{"x", -1, 1, 5}});
  EXPECT_EQ(g.size(), 15u);
  EXPECT_DOUBLE_EQ(g.axis(1).spacing(), 0.5);
  EXPECT_EQ(g.stride(0), 5u);
  EXPECT_EQ(g.stride(1), 1u);
  const GridPoint p = g.point(7);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  EXPECT_DOUBLE_EQ(g.axis(1).coordinate(4), 1.0);
}

TEST(GridSpec, RejectsInvalidAxes) {
  EXPECT_THROW(GridSpec({Axis{"x", 0, 1, 1}}), Error);
  EXPECT_THROW(GridSpec({Axis{"x", 1, 1, 3}}), Error);
  EXPECT_THROW(GridSpec({Axis{"x", 0, 1, 3}, Axis{"x", 0, 1, 3}}), Error);
  EXPECT_THROW(GridSpec(std::vector<Axis>{}), Error);
  EXPECT_THROW(GridSpec({Axis{"a", 0, 1, 2}, Axis{"b", 0, 1, 2}, Axis{"c", 0, 1, 2},
                         Axis{"d", 0, 1, 2}, Axis{"e", 0, 1, 2}}),
               Error);
}

TEST(GridSpec, SampleCap) {
  EXPECT_THROW(GridSpec({Axis{"x", 0, 1, 100}, Axis{"y", 0, 1, 100}}, 9999), Error);
  EXPECT_NO_THROW(GridSpec({Axis{"x", 0, 1, 100}, Axis{"y", 0, 1, 100}}, 10000));
}

TEST(SampleAnalytic, IdentityPolynomial) {
  const auto f = sample_analytic(AnalyticFamily::polynomial({0.0, 1.0}), line(0, 1, 3));
  EXPECT_EQ(f[0], cplx(0.0));
  EXPECT_EQ(f[1], cplx(0.5));
  EXPECT_EQ(f[2], cplx(1.0));
}

TEST(SampleAnalytic, GaussianPeak) {
  const auto f = sample_analytic(AnalyticFamily::gaussian({0.0}, 1.0), line(-1, 1, 3));
  EXPECT_EQ(f[1], cplx(1.0));
  EXPECT_NEAR(f[0].real(), std::exp(-0.5), 1e-15);
}

TEST(SampleAnalytic, HarmonicPolyDegreeTwo) {
  GridSpec g({Axis{"x", 0, 1, 2}, Axis{"y", 0, 1, 2}, Axis{"z", 0, 2, 2}});
  const auto f = sample_analytic(AnalyticFamily::harmonic_poly(2), g);
  EXPECT_NEAR(std::abs(f[7] - cplx(3.0)), 0.0, 1e-14);  // (1, 1, 2)
}

TEST(SampleAnalytic, PoleOnGridNamesNode) {
  try {
    sample_analytic(AnalyticFamily::rational_inverse(0.5), line(0, 1, 3));
    FAIL() << "expected a singular-sample error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular);
    EXPECT_NE(std::string(e.what()).find("x=0.5"), std::string::npos);
  }
}

TEST(SampleAnalytic, ArityMismatch) {
  EXPECT_THROW(sample_analytic(AnalyticFamily::gaussian({0.0, 0.0}, 1.0), line(0, 1, 3)),
               Error);
  EXPECT_THROW(sample_analytic(AnalyticFamily::harmonic_poly(1), line(0, 1, 3)), Error);
}

TEST(AnalyticFamily, InvariantsEnforced) {
  EXPECT_THROW(AnalyticFamily::polynomial(std::vector<cplx>(18, 1.0)), Error);
  EXPECT_NO_THROW(AnalyticFamily::polynomial(std::vector<cplx>(17, 1.0)));
  EXPECT_THROW(AnalyticFamily::gaussian({0.0}, 0.0), Error);
  EXPECT_THROW(AnalyticFamily::harmonic_poly(7), Error);
}

TEST(AnalyticFamily, ComplexContinuationAndDerivative) {
  const cplx s(0.3, -0.7);
  const auto g = AnalyticFamily::gaussian({0.2}, 0.8);
  const auto e = AnalyticFamily::damped_exponential(2.0, 1.5);
  const auto r = AnalyticFamily::rational_inverse(cplx(1.0, 1.0));
  const auto p = AnalyticFamily::polynomial({1.0, 2.0, 3.0});
  EXPECT_NEAR(std::abs(g.at(s) - std::exp(-(s - 0.2) * (s - 0.2) / 1.28)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e.at(s) - 2.0 * std::exp(-1.5 * s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.at(s) - 1.0 / (s - cplx(1.0, 1.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.at(s) - (1.0 + 2.0 * s + 3.0 * s * s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.derivative_at(s) - (2.0 + 6.0 * s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e.derivative_at(s) + 1.5 * e.at(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.derivative_at(s) + r.at(s) * r.at(s)), 0.0, 1e-15);
  EXPECT_THROW(r.at(cplx(1.0, 1.0)), Error);
  EXPECT_FALSE(AnalyticFamily::harmonic_poly(2).complex_evaluable());
}

TEST(FieldSlice, FirstRow) {
  GridSpec g({Axis{"t", 0, 1, 3}, Axis{"x", 0, 1, 3}});
  std::vector<cplx> v(9);
  for (std::size_t i = 0; i < 9; ++i) v[i] = static_cast<double>(i);
  const auto s = field_slice(ScalarField(g, v), "t", 0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.grid().rank(), 1u);
  EXPECT_EQ(s[0], cplx(0));
  EXPECT_EQ(s[2], cplx(2));
  const auto inner = field_slice(ScalarField(g, v), "x", 1);
  EXPECT_EQ(inner[0], cplx(1));
  EXPECT_EQ(inner[2], cplx(7));
}

TEST(FieldSlice, Errors) {
  const auto f = ScalarField::zeros(line(0, 1, 3));
  EXPECT_THROW(field_slice(f, "x", 0), Error);
  GridSpec g({Axis{"t", 0, 1, 3}, Axis{"x", 0, 1, 3}});
  EXPECT_THROW(field_slice(ScalarField::zeros(g), "y", 0), Error);
  EXPECT_THROW(field_slice(ScalarField::zeros(g), "t", 3), Error);
}

TEST(FieldSlice, ConstantFieldStaysConstant) {
  GridSpec g({Axis{"t", 0, 1, 4}, Axis{"x", 0, 1, 5}});
  const auto s = field_slice(ScalarField(g, std::vector<cplx>(20, cplx(2.5, -1))), "x", 3);
  for (const auto& v : s.values()) EXPECT_EQ(v, cplx(2.5, -1));
}

TEST(FieldSlice, CommutesWithSampling) {
  GridSpec g({Axis{"x", -1, 1, 5}, Axis{"y", -1, 1, 6}, Axis{"z", 0, 2, 7}});
  const auto fam = AnalyticFamily::harmonic_poly(4);
  const auto slice = field_slice(sample_analytic(fam, g), "y", 2);
  const double y = g.axis(1).coordinate(2);
  for (std::size_t n = 0; n < slice.size(); ++n) {
    const GridPoint p = slice.grid().point(n);
    const std::array<double, 3> xyz{p[0], y, p[1]};
    EXPECT_EQ(slice[n], fam(xyz));
  }
}

TEST(ScalarField, RejectsNonFinite) {
  std::vector<cplx> v(3, 1.0);
  v[1] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(ScalarField(line(0, 1, 3), v), Error);
  v[1] = cplx(0.0, INFINITY);
  EXPECT_THROW(ScalarField(line(0, 1, 3), v), Error);
  EXPECT_THROW(ScalarField(line(0, 1, 3), std::vector<cplx>(2)), Error);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (std::size_t n : {1u, 2u, 5u, 12u, 40u}) {
    const auto r = gauss_legendre(n);
    for (std::size_t deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / static_cast<double>(deg + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(Quadrature, CompositeAndTrapezoid) {
  const auto c = composite_gauss_legendre(0.0, std::numbers::pi, 4, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c.weights[i] * std::sin(c.nodes[i]);
  EXPECT_NEAR(s, 2.0, 1e-13);
  const auto t = trapezoid(0.0, 1.0, 11);
  double lin = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) lin += t.weights[i] * (3.0 * t.nodes[i] + 1.0);
  EXPECT_NEAR(lin, 2.5, 1e-14);
}

TEST(UniformSeries, CubicInterpolationExactOnCubics) {
  UniformSeries s{-1.0, 0.25, {}};
  auto f = [](double x) { return 1.0 - 2.0 * x + 0.5 * x * x * x; };
  for (int i = 0; i <= 8; ++i) s.values.emplace_back(f(-1.0 + 0.25 * i));
  for (double x : {-1.0, -0.9, -0.13, 0.4, 0.99, 1.0}) {
    EXPECT_NEAR(s.value(x).real(), f(x), 1e-13);
    EXPECT_NEAR(s.derivative(x).real(), -2.0 + 1.5 * x * x, 1e-12);
  }
  EXPECT_THROW(s.value(1.01), Error);
  EXPECT_THROW(s.value(-1.01), Error);
}

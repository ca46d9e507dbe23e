#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pwd/rotations.hpp"

using namespace pwd;
using namespace pwd::rotations;

namespace {

template <typename Fn>
double integrate(const DirectionSet& q, Fn fn) {
  double s = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) s += q.weights[j] * fn(q.nodes[j]);
  return s;
}

double det(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST(Direction, UnitNormEnforced) {
  const std::array<double, 2> bad{1.0, 1e-6};
  EXPECT_THROW(Direction{bad}, Error);
  const std::array<double, 4> four{1, 0, 0, 0};
  EXPECT_THROW(Direction{four}, Error);
  EXPECT_NO_THROW(Direction::from_spherical(0.3, 1.2));
}

TEST(CircleQuadrature, NodesAndWeights) {
  const auto q = circle_quadrature(4);
  ASSERT_EQ(q.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) {
    const double phi = std::numbers::pi / 2 * static_cast<double>(j);
    EXPECT_NEAR(q.nodes[j][0], std::cos(phi), 1e-15);
    EXPECT_NEAR(q.nodes[j][1], std::sin(phi), 1e-15);
    EXPECT_DOUBLE_EQ(q.weights[j], std::numbers::pi / 2);
  }
  EXPECT_THROW(circle_quadrature(1), Error);
}

TEST(CircleQuadrature, TrigonometricExactness) {
  const auto q8 = circle_quadrature(8);
  EXPECT_NEAR(integrate(q8, [](const Direction& n) { return n[0]; }), 0.0, 1e-14);
  EXPECT_NEAR(integrate(q8, [](const Direction& n) { return n[0] * n[0]; }), std::numbers::pi,
              1e-13);
  const std::size_t m = 11;
  const auto q = circle_quadrature(m);
  for (std::size_t k = 0; k < m; ++k) {
    double re = 0, im = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double phi = std::atan2(q.nodes[j][1], q.nodes[j][0]);
      re += q.weights[j] * std::cos(static_cast<double>(k) * phi);
      im += q.weights[j] * std::sin(static_cast<double>(k) * phi);
    }
    EXPECT_NEAR(re, k == 0 ? 2 * std::numbers::pi : 0.0, 1e-13) << k;
    EXPECT_NEAR(im, 0.0, 1e-13) << k;
  }
  EXPECT_NEAR(q.measure(), 2 * std::numbers::pi, 1e-12);
}

TEST(SphereQuadrature, Moments) {
  const auto q = sphere_quadrature(2, 4);
  EXPECT_NEAR(q.measure(), 4 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(integrate(q, [](const Direction& n) { return n[2]; }), 0.0, 1e-14);
  EXPECT_NEAR(integrate(q, [](const Direction& n) { return n[2] * n[2]; }),
              4 * std::numbers::pi / 3, 1e-12);
  for (double w : q.weights) EXPECT_GT(w, 0.0);
  EXPECT_THROW(sphere_quadrature(0, 4), Error);
  EXPECT_THROW(sphere_quadrature(2, 1), Error);
}

TEST(MonteCarlo, SingleSampleAndDeterminism) {
  const auto one = monte_carlo_directions(1, 42, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one.weights[0], 4 * std::numbers::pi);
  const auto a = monte_carlo_directions(1000, 7, 3);
  const auto b = monte_carlo_directions(1000, 7, 3);
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(a.nodes[j][c], b.nodes[j][c]);
  const auto c = monte_carlo_directions(1000, 8, 3);
  EXPECT_NE(a.nodes[0][0], c.nodes[0][0]);
}

TEST(MonteCarlo, PrefixIndependentOfCount) {
  const auto small = monte_carlo_directions(10, 3, 2);
  const auto large = monte_carlo_directions(100, 3, 2);
  for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(small.nodes[j][0], large.nodes[j][0]);
}

TEST(MonteCarlo, EmpiricalMeanNearZero) {
  for (std::size_t dim : {2u, 3u}) {
    const auto q = monte_carlo_directions(100000, 12345, dim);
    std::array<double, 3> mean{};
    for (const auto& n : q.nodes)
      for (std::size_t c = 0; c < dim; ++c) mean[c] += n[c] / 1e5;
    double norm = 0;
    for (double m : mean) norm += m * m;
    EXPECT_LT(std::sqrt(norm), 0.02);
    EXPECT_NEAR(q.measure(), dim == 2 ? 2 * std::numbers::pi : 4 * std::numbers::pi, 1e-9);
  }
}

TEST(Twistor, RotationExamples) {
  const auto r0 = twistor_rotation({0, 0});
  const Matrix3 e0{{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  const auto ri = twistor_rotation({0, 1});
  const Matrix3 ei{{{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};
  const auto r1 = twistor_rotation({1, 0});
  const Matrix3 e1{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      EXPECT_NEAR(r0[a][b], e0[a][b], 1e-15);
      EXPECT_NEAR(ri[a][b], ei[a][b], 1e-15);
      EXPECT_NEAR(r1[a][b], e1[a][b], 1e-15);
    }
}

TEST(Twistor, PhaseExamples) {
  const cplx a = twistor_phase({0, 1}, {1, 2, 3});
  EXPECT_NEAR(std::abs(a - cplx(4, 2)), 0.0, 1e-14);
  const cplx b = twistor_phase({0, 0}, {1, 0, 2});
  EXPECT_NEAR(std::abs(b - cplx(2, 1)), 0.0, 1e-14);
  EXPECT_EQ(twistor_phase({0.3, -2}, {0, 0, 0}), cplx(0));
}

TEST(Twistor, OrthogonalityAndPhaseIdentity) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const TwistorPoint w{nd(rng), nd(rng)};
    const auto r = twistor_rotation(w);
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += r[k][a] * r[k][b];
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    EXPECT_LT(worst, 1e-12);
    EXPECT_NEAR(det(r), 1.0, 1e-12);
    const std::array<double, 3> p{nd(rng), nd(rng), nd(rng)};
    const double xr = r[0][0] * p[0] + r[0][1] * p[1] + r[0][2] * p[2];
    const double zr = r[2][0] * p[0] + r[2][1] * p[1] + r[2][2] * p[2];
    const double mod2 = w.u * w.u + w.v * w.v;
    const cplx rotated = (mod2 + 1.0) * cplx(zr, -xr);
    const double scale = (1.0 + mod2) * std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    EXPECT_LT(std::abs(twistor_phase(w, p) - rotated), 1e-12 * scale);
  }
}

TEST(Twistor, AngleMapRoundTrip) {
  EXPECT_NEAR(angle_to_twistor(std::numbers::pi).u, 0.0, 1e-15);
  EXPECT_NEAR(angle_to_twistor(std::numbers::pi / 2).u, 1.0, 1e-15);
  EXPECT_THROW(angle_to_twistor(0.0), Error);
  EXPECT_THROW(angle_to_twistor(kTwoPi), Error);
  EXPECT_THROW(angle_to_twistor(-1.0), Error);
  for (int k = 1; k < 100; ++k) {
    const double phi = kTwoPi * k / 100.0;
    const double w = angle_to_twistor(phi).u;
    EXPECT_NEAR((w * w - 1) / (w * w + 1), std::cos(phi), 1e-14);
    EXPECT_NEAR(2 * w / (w * w + 1), std::sin(phi), 1e-14);
  }
}

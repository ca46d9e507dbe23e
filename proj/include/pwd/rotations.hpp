#ifndef PWD_ROTATIONS_HPP
#define PWD_ROTATIONS_HPP

// Directions on S^1 and S^2, quadrature and Monte Carlo direction sets, and
// the rational (twistor) parameterization of rotations in R^3.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/quadrature.hpp"

namespace pwd::rotations {

using cplx = std::complex<double>;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Unit vector in R^2 or R^3.
class Direction {
 public:
  Direction() = default;

  Direction(std::span<const double> components) : dim_(components.size()) {
    require(dim_ == 2 || dim_ == 3, "directions live in R^2 or R^3");
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      c_[i] = components[i];
      norm2 += c_[i] * c_[i];
    }
    require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-14,
            "direction is not a unit vector", ErrorKind::domain);
  }

  static Direction from_angle(double phi) {
    const std::array<double, 2> c{std::cos(phi), std::sin(phi)};
    return Direction(c);
  }

  static Direction from_spherical(double cos_theta, double phi) {
    const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const std::array<double, 3> c{s * std::cos(phi), s * std::sin(phi), cos_theta};
    return Direction(c);
  }

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> components() const { return {c_.data(), dim_}; }

  double dot(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * x[i];
    return s;
  }

 private:
  std::array<double, 3> c_{1.0, 0.0, 0.0};
  std::size_t dim_ = 3;
};

enum class SamplingMode { deterministic, monte_carlo };

/// Nodes and weights over (a portion of) S^1 or S^2.
struct DirectionSet {
  std::vector<Direction> nodes;
  std::vector<double> weights;
  SamplingMode mode = SamplingMode::deterministic;
  std::uint64_t seed = 0;
  std::size_t dim = 2;

  std::size_t size() const { return nodes.size(); }

  double measure() const {
    double m = 0.0;
    for (double w : weights) m += w;
    return m;
  }
};

/// Full measure of the unit sphere in R^dim.
inline double sphere_measure(std::size_t dim) {
  return dim == 2 ? kTwoPi : 4.0 * std::numbers::pi;
}

/// Uniform rule phi_j = 2 pi j / M with weights 2 pi / M. Exact for
/// trigonometric polynomials of degree < M.
inline DirectionSet circle_quadrature(std::size_t m) {
  require(m >= 2, "circle quadrature needs M >= 2");
  DirectionSet set;
  set.dim = 2;
  for (std::size_t j = 0; j < m; ++j) {
    set.nodes.push_back(
        Direction::from_angle(kTwoPi * static_cast<double>(j) / static_cast<double>(m)));
    set.weights.push_back(kTwoPi / static_cast<double>(m));
  }
  return set;
}

/// Midpoint rule on phi in [0, pi], weights pi / M (total measure pi).
inline DirectionSet half_circle_quadrature(std::size_t m) {
  require(m >= 1, "half-circle quadrature needs M >= 1");
  DirectionSet set;
  set.dim = 2;
  const double h = std::numbers::pi / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    set.nodes.push_back(Direction::from_angle(h * (static_cast<double>(j) + 0.5)));
    set.weights.push_back(h);
  }
  return set;
}

/// Gauss-Legendre in cos(theta) times the uniform azimuthal rule.
inline DirectionSet sphere_quadrature(std::size_t polar, std::size_t azimuthal) {
  require(polar >= 1 && azimuthal >= 2,
          "sphere quadrature needs L >= 1 polar and M >= 2 azimuthal nodes");
  const QuadratureRule gl = gauss_legendre(polar);
  DirectionSet set;
  set.dim = 3;
  for (std::size_t l = 0; l < polar; ++l) {
    for (std::size_t j = 0; j < azimuthal; ++j) {
      const double phi =
          kTwoPi * static_cast<double>(j) / static_cast<double>(azimuthal);
      set.nodes.push_back(Direction::from_spherical(gl.nodes[l], phi));
      set.weights.push_back(gl.weights[l] * kTwoPi / static_cast<double>(azimuthal));
    }
  }
  return set;
}

namespace detail {
// SplitMix64 output number `counter` (1-based) of the stream seeded with `seed`.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}
}  // namespace detail

/// Uniform random directions. Node j depends only on (seed, j).
inline DirectionSet monte_carlo_directions(std::size_t m, std::uint64_t seed,
                                           std::size_t dim) {
  require(m >= 1, "Monte Carlo direction set needs M >= 1");
  require(dim == 2 || dim == 3, "Monte Carlo directions live on S^1 or S^2");
  DirectionSet set;
  set.dim = dim;
  set.mode = SamplingMode::monte_carlo;
  set.seed = seed;
  const double w = sphere_measure(dim) / static_cast<double>(m);
  set.nodes.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double u1 = detail::unit_uniform(detail::splitmix64(seed, 2 * j + 1));
    const double u2 = detail::unit_uniform(detail::splitmix64(seed, 2 * j + 2));
    set.nodes.push_back(dim == 2 ? Direction::from_angle(kTwoPi * u1)
                                 : Direction::from_spherical(2.0 * u1 - 1.0, kTwoPi * u2));
  }
  set.weights.assign(m, w);
  return set;
}

// ---------------------------------------------------------------------------
// Twistor parameterization

struct TwistorPoint {
  double u = 0.0;
  double v = 0.0;

  cplx omega() const { return {u, v}; }
  static TwistorPoint from(cplx w) { return {w.real(), w.imag()}; }
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Rotation taking (x, y, z) to (x', y', z') for the parameter omega = u + iv.
inline Matrix3 twistor_rotation(TwistorPoint w) {
  const double u = w.u, v = w.v;
  const double s = 1.0 / (u * u + v * v + 1.0);
  return {{{s * (u * u - v * v - 1.0), s * 2.0 * u, s * (-2.0 * u * v)},
           {s * (-2.0 * u), s * (u * u + v * v - 1.0), s * 2.0 * v},
           {s * 2.0 * u * v, s * 2.0 * v, s * (u * u - v * v + 1.0)}}};
}

/// (omega^2 + 1) z - i (omega^2 - 1) x - 2 i omega y, which equals
/// (|omega|^2 + 1) (z' - i x') for the rotated coordinates above.
inline cplx twistor_phase(TwistorPoint w, const std::array<double, 3>& p) {
  const cplx om = w.omega();
  const cplx i(0.0, 1.0);
  const cplx om2 = om * om;
  return (om2 + 1.0) * p[2] - i * (om2 - 1.0) * p[0] - 2.0 * i * om * p[1];
}

/// omega = cot(phi / 2), so that cos(phi) = (omega^2 - 1)/(omega^2 + 1) and
/// sin(phi) = 2 omega / (omega^2 + 1). phi = 0 maps to omega = infinity.
inline TwistorPoint angle_to_twistor(double phi) {
  if (!(phi > 0.0 && phi < kTwoPi))
    throw Error(ErrorKind::domain,
                "angle " + std::to_string(phi) +
                    " outside (0, 2pi): phi = 0 maps to omega = infinity");
  return {std::cos(0.5 * phi) / std::sin(0.5 * phi), 0.0};
}

}  // namespace pwd::rotations

#endif  // PWD_ROTATIONS_HPP

#ifndef PWD_PLANEWAVE_HPP
#define PWD_PLANEWAVE_HPP

// Superpositions of rotated lower-dimensional solutions:
//   Laplace (3D) from 2D solutions F(z - i x'),
//   anisotropic Laplace from F(-sqrt(alpha) z + i x'),
//   wave (1+2) and (1+3) from (1+1) solutions F(t - n.x),
//   axisymmetric fields from axis values or from (1+2) solutions,
//   Laplace (3D) from a curve in the twistor parameter plane,
// plus the relations between plane-wave profiles and initial-value sources.
//
// Source normalization follows the singular-kernel formulas of the descent
// module: the (1+2) superposition built from profile_from_source_2d has
// u_t(0, x) = 2 pi psi(x) with psi(x) = (1/2pi) \int psi~(k) exp(-i k.x) d^2k,
// and the (1+3) one built from profile_from_source_3d has u_t(0, x) = 4 pi psi(x)
// with psi(x) = (2pi)^{-3/2} \int psi~(k) exp(-i k.x) d^3k.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/interp.hpp"
#include "pwd/parallel.hpp"
#include "pwd/quadrature.hpp"
#include "pwd/rotations.hpp"
#include "pwd/spectral.hpp"

namespace pwd::planewave {

using rotations::Direction;
using rotations::DirectionSet;

/// One-argument profile F(xi) carried by each rotated lower-dimensional
/// solution. Analytic profiles accept complex arguments; tabulated ones only
/// real arguments inside their xi-range.
class PlaneWaveProfile {
 public:
  PlaneWaveProfile(AnalyticFamily family) : v_(std::move(family)) {
    require(std::get<AnalyticFamily>(v_).complex_evaluable(),
            "profile families must be univariate");
  }
  PlaneWaveProfile(UniformSeries table) : v_(std::move(table)) {
    require(std::get<UniformSeries>(v_).values.size() >= 4,
            "tabulated profiles need at least 4 samples");
    require(std::get<UniformSeries>(v_).step > 0.0, "tabulated xi-step must be positive");
  }

  bool complex_evaluable() const { return std::holds_alternative<AnalyticFamily>(v_); }
  bool is_tabulated() const { return std::holds_alternative<UniformSeries>(v_); }
  const AnalyticFamily* family() const { return std::get_if<AnalyticFamily>(&v_); }
  const UniformSeries* table() const { return std::get_if<UniformSeries>(&v_); }

  cplx at(cplx xi) const {
    if (const auto* f = family()) return f->at(xi);
    throw Error(ErrorKind::invalid_argument,
                "tabulated profile cannot be evaluated at a complex argument");
  }

  cplx value(double xi) const {
    if (const auto* f = family()) return f->at(xi);
    return table()->value(xi);
  }

  cplx derivative(double xi) const {
    if (const auto* f = family()) return f->derivative_at(xi);
    return table()->derivative(xi);
  }

 private:
  std::variant<AnalyticFamily, UniformSeries> v_;
};

/// Either one profile shared by all directions or one profile per node.
class ProfileSet {
 public:
  ProfileSet(PlaneWaveProfile shared) : profiles_{std::move(shared)}, shared_(true) {}
  ProfileSet(AnalyticFamily shared) : ProfileSet(PlaneWaveProfile(std::move(shared))) {}

  static ProfileSet per_node(std::vector<PlaneWaveProfile> profiles) {
    require(!profiles.empty(), "per-node profile list is empty");
    ProfileSet set(profiles.front());
    set.profiles_ = std::move(profiles);
    set.shared_ = false;
    return set;
  }

  bool shared() const { return shared_; }
  std::size_t size() const { return profiles_.size(); }

  const PlaneWaveProfile& operator[](std::size_t node) const {
    return shared_ ? profiles_.front() : profiles_[node];
  }

  void check_matches(const DirectionSet& q) const {
    require(shared_ || profiles_.size() == q.size(),
            "per-node profile count " + std::to_string(profiles_.size()) +
                " does not match " + std::to_string(q.size()) + " directions");
  }

  void require_complex_evaluable() const {
    for (const auto& p : profiles_)
      require(p.complex_evaluable(),
              "Laplace superpositions take complex arguments; tabulated profiles "
              "are only defined on the real line");
  }

 private:
  std::vector<PlaneWaveProfile> profiles_;
  bool shared_ = true;
};

namespace detail {

template <std::size_t N>
std::array<std::size_t, N> axes_by_name(const GridSpec& grid,
                                        const std::array<const char*, N>& names) {
  require(grid.rank() == N, "grid needs exactly " + std::to_string(N) + " axes");
  std::array<std::size_t, N> idx{};
  for (std::size_t i = 0; i < N; ++i) idx[i] = grid.axis_index(names[i]);
  return idx;
}

inline void require_dim(const DirectionSet& q, std::size_t dim) {
  require(q.dim == dim && q.size() > 0,
          "direction set must be a non-empty set on S^" + std::to_string(dim - 1));
}

}  // namespace detail

/// V(x, y, z) = sum_j w_j F_j(z - i (x cos phi_j + y sin phi_j)).
inline ScalarField laplace3_whittaker(const ProfileSet& profiles, const DirectionSet& q,
                                      const GridSpec& grid) {
  detail::require_dim(q, 2);
  profiles.check_matches(q);
  profiles.require_complex_evaluable();
  for (std::size_t j = 0; j < profiles.size(); ++j)
    if (const auto* f = profiles[j].family())
      if (const auto* d = std::get_if<family::DampedExponential>(&f->variant()))
        require(d->decay > 0.0,
                "damped-exponential Laplace profiles need decay k0 > 0");
  const auto ax = detail::axes_by_name<3>(grid, {"x", "y", "z"});
  const cplx i(0.0, 1.0);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double x = p[ax[0]], y = p[ax[1]], z = p[ax[2]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double xr = x * q.nodes[j][0] + y * q.nodes[j][1];
      acc += q.weights[j] * profiles[j].at(z - i * xr);
    }
    return acc;
  });
}

/// Solution of u_zz + alpha (u_xx + u_yy) = 0:
/// sum_j w_j F_j(-sqrt(alpha) z + i (x cos phi_j + y sin phi_j)).
inline ScalarField aniso_whittaker(const ProfileSet& profiles, double alpha,
                                   const DirectionSet& q, const GridSpec& grid) {
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  detail::require_dim(q, 2);
  profiles.check_matches(q);
  profiles.require_complex_evaluable();
  const auto ax = detail::axes_by_name<3>(grid, {"x", "y", "z"});
  for (std::size_t j = 0; j < profiles.size(); ++j)
    if (const auto* f = profiles[j].family())
      if (std::holds_alternative<family::DampedExponential>(f->variant()))
        require(grid.axis(ax[2]).min >= 0.0,
                "damped-exponential profiles need z >= 0 on the grid",
                ErrorKind::domain);
  const double root = std::sqrt(alpha);
  const cplx i(0.0, 1.0);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double x = p[ax[0]], y = p[ax[1]], z = p[ax[2]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double xr = x * q.nodes[j][0] + y * q.nodes[j][1];
      acc += q.weights[j] * profiles[j].at(-root * z + i * xr);
    }
    return acc;
  });
}

/// (1+2) wave solution sum_j w_j F_j(t - x cos phi_j - y sin phi_j).
inline ScalarField wave12_superpose(const ProfileSet& profiles, const DirectionSet& q,
                                    const GridSpec& grid) {
  detail::require_dim(q, 2);
  profiles.check_matches(q);
  const auto ax = detail::axes_by_name<3>(grid, {"t", "x", "y"});
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double t = p[ax[0]], x = p[ax[1]], y = p[ax[2]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      acc += q.weights[j] * profiles[j].value(t - x * q.nodes[j][0] - y * q.nodes[j][1]);
    return acc;
  });
}

/// (1+3) wave solution sum_j w_j F_j(t - n_j.x).
inline ScalarField wave13_superpose(const ProfileSet& profiles, const DirectionSet& q,
                                    const GridSpec& grid) {
  detail::require_dim(q, 3);
  profiles.check_matches(q);
  const auto ax = detail::axes_by_name<4>(grid, {"t", "x", "y", "z"});
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const std::array<double, 3> x{p[ax[1]], p[ax[2]], p[ax[3]]};
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      acc += q.weights[j] * profiles[j].value(p[ax[0]] - q.nodes[j].dot(x));
    return acc;
  });
}

// ---------------------------------------------------------------------------
// Profile <-> source relations

struct HalfLineOptions {
  double panel_width = 0.25;  // upper bound; narrowed for large |xi|
  std::size_t order = 12;
  double tail_tolerance = 1e-10;  // relative amplitude allowed at the cutoff
};

namespace detail {

// values[m] = prefactor * \int_0^K g(k) [a(k n) e^{i k xi_m} - a(-k n) e^{-i k xi_m}] dk
inline UniformSeries half_line_transform(const spectral::SpectralAmplitude& amp,
                                         const Direction& n, const Axis& xi_grid,
                                         bool weight_by_k, cplx prefactor,
                                         const HalfLineOptions& opt) {
  const double cutoff = amp.support_radius();
  require(std::isfinite(cutoff) && cutoff > 0.0, "amplitude has no finite support");
  const std::size_t dim = n.dim();
  auto ray = [&](double k) {
    std::array<double, 3> kv{};
    for (std::size_t d = 0; d < dim; ++d) kv[d] = k * n[d];
    return std::array<cplx, 2>{amp(std::span<const double>(kv.data(), dim)),
                               amp(std::span<const double>(
                                   std::array<double, 3>{-kv[0], -kv[1], -kv[2]}.data(),
                                   dim))};
  };
  double peak = 0.0, tail = 0.0;
  for (std::size_t s = 0; s <= 200; ++s) {
    const double k = cutoff * static_cast<double>(s) / 200.0;
    const auto a = ray(k);
    const double m = std::max(std::abs(a[0]), std::abs(a[1]));
    peak = std::max(peak, m);
    if (k >= 0.98 * cutoff) tail = std::max(tail, m);
  }
  require(tail <= opt.tail_tolerance * peak || peak == 0.0,
          "amplitude does not decay along the ray: relative tail " +
              std::to_string(peak > 0 ? tail / peak : 0.0),
          ErrorKind::numerical);

  const double xi_extent = std::max(std::abs(xi_grid.min), std::abs(xi_grid.max));
  const double width = std::min(opt.panel_width, std::numbers::pi / (xi_extent + 1.0));
  const auto panels = static_cast<std::size_t>(std::ceil(cutoff / width));
  const QuadratureRule rule = composite_gauss_legendre(0.0, cutoff, panels, opt.order);

  const std::size_t m = xi_grid.points;
  const double step = xi_grid.spacing();
  std::vector<cplx> plus(rule.size()), minus(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double k = rule.nodes[j];
    const auto a = ray(k);
    const double w = rule.weights[j] * (weight_by_k ? k : 1.0);
    plus[j] = w * a[0];
    minus[j] = w * a[1];
  }
  std::vector<cplx> values(m, 0.0);
  const cplx i(0.0, 1.0);
  // Phasors advance by exp(i k step); re-seeded every 64 samples.
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double k = rule.nodes[j];
    const cplx advance = std::exp(i * k * step);
    cplx phase;
    for (std::size_t s = 0; s < m; ++s) {
      if (s % 64 == 0)
        phase = std::exp(i * k * xi_grid.coordinate(s));
      else
        phase *= advance;
      values[s] += plus[j] * phase - minus[j] * std::conj(phase);
    }
  }
  for (auto& v : values) v *= prefactor;
  return UniformSeries{xi_grid.min, step, std::move(values)};
}

}  // namespace detail

/// F(xi; n) = (1/2i) \int_0^inf [psi~(k n) e^{i k xi} - psi~(-k n) e^{-i k xi}] dk,
/// tabulated on xi_grid. For real psi, psi~(-k) = conj(psi~(k)) and F is real.
inline PlaneWaveProfile profile_from_source_2d(const spectral::SpectralAmplitude& psi_hat,
                                               const Direction& n, const Axis& xi_grid,
                                               const HalfLineOptions& opt = {}) {
  require(n.dim() == 2, "profile_from_source_2d needs a direction in R^2");
  require(xi_grid.points >= 4, "xi-grid needs at least 4 points");
  return PlaneWaveProfile(
      detail::half_line_transform(psi_hat, n, xi_grid, false, cplx(0.0, -0.5), opt));
}

/// F(xi; n) = (2pi)^{-1/2} \int_0^inf (k / i) [psi~(k n) e^{i k xi}
///            - psi~(-k n) e^{-i k xi}] dk, tabulated on xi_grid.
inline PlaneWaveProfile profile_from_source_3d(const spectral::SpectralAmplitude& psi_hat,
                                               const Direction& n, const Axis& xi_grid,
                                               const HalfLineOptions& opt = {}) {
  require(n.dim() == 3, "profile_from_source_3d needs a direction in R^3");
  require(xi_grid.points >= 4, "xi-grid needs at least 4 points");
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return PlaneWaveProfile(
      detail::half_line_transform(psi_hat, n, xi_grid, true, cplx(0.0, -norm), opt));
}

/// psi(x) = (1/|S|) sum_j w_j F_j'(-n_j.x), |S| = 2 pi on S^1 and 4 pi on S^2:
/// the initial velocity of the superposition divided by the sphere measure.
inline ScalarField source_from_profiles(const ProfileSet& profiles, const DirectionSet& q,
                                        const GridSpec& grid) {
  require(q.dim == 2 || q.dim == 3, "directions must lie on S^1 or S^2");
  require(q.size() > 0, "empty direction set");
  profiles.check_matches(q);
  std::vector<std::size_t> ax;
  static const char* names[] = {"x", "y", "z"};
  require(grid.rank() == q.dim, "grid rank must match the direction dimension");
  for (std::size_t d = 0; d < q.dim; ++d) ax.push_back(grid.axis_index(names[d]));
  const double inv_measure = 1.0 / rotations::sphere_measure(q.dim);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    std::array<double, 3> x{};
    for (std::size_t d = 0; d < q.dim; ++d) x[d] = p[ax[d]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      acc += q.weights[j] * profiles[j].derivative(-q.nodes[j].dot(x));
    return inv_measure * acc;
  });
}

// ---------------------------------------------------------------------------
// Axisymmetric fields

/// V(r, z) = (1/pi) sum_j w_j f(z - i r cos phi_j) over a rule on [0, pi].
inline ScalarField axis_to_axisymmetric(const AnalyticFamily& axis_values,
                                        const DirectionSet& q, const GridSpec& grid) {
  require(axis_values.complex_evaluable(), "axis values must be a univariate family");
  detail::require_dim(q, 2);
  const auto ax = detail::axes_by_name<2>(grid, {"r", "z"});
  if (const auto* rat = std::get_if<family::RationalInverse>(&axis_values.variant())) {
    // The segment {z + i s : |s| <= r} must avoid the pole.
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const GridPoint p = grid.point(n);
      const double r = std::abs(p[ax[0]]), z = p[ax[1]];
      if (std::abs(rat->pole.real() - z) <= 1e-12 * (1.0 + std::abs(z)) &&
          std::abs(rat->pole.imag()) <= r + 1e-12)
        throw Error(ErrorKind::singular,
                    "pole of the axis function lies on the segment for node " +
                        grid.describe_node(n));
    }
  }
  const cplx i(0.0, 1.0);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double r = p[ax[0]], z = p[ax[1]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      acc += q.weights[j] * axis_values.at(z - i * r * q.nodes[j][0]);
    return acc / std::numbers::pi;
  });
}

/// Evaluator of a (1+2) solution u(t, x, z).
using Wave12Evaluator = std::function<cplx(double t, double x, double z)>;

/// Cylindrically symmetric (1+3) solution
/// u(t, r, z) = (1/2pi) sum_j w_j u12(t, r cos phi_j, z).
inline ScalarField axisym_wave_from_12(const Wave12Evaluator& u12, const DirectionSet& q,
                                       const GridSpec& grid) {
  detail::require_dim(q, 2);
  const auto ax = detail::axes_by_name<3>(grid, {"t", "r", "z"});
  const double inv = 1.0 / (2.0 * std::numbers::pi);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double t = p[ax[0]], r = p[ax[1]], z = p[ax[2]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j)
      acc += q.weights[j] * u12(t, r * q.nodes[j][0], z);
    return inv * acc;
  });
}

// ---------------------------------------------------------------------------
// Twistor-curve superposition

/// h(zeta; omega), evaluated at zeta = twistor_phase(omega, x).
using TwistorIntegrand = std::function<cplx(cplx zeta, cplx omega)>;

inline TwistorIntegrand twistor_integrand(AnalyticFamily f) {
  require(f.complex_evaluable(), "twistor integrand must be univariate");
  return [f = std::move(f)](cplx zeta, cplx) { return f.at(zeta); };
}

/// Sampled curve omega(s) with tangents d omega / ds and quadrature weights in s.
struct TwistorCurve {
  std::vector<rotations::TwistorPoint> points;
  std::vector<cplx> tangents;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }

  /// omega(s) = center + radius e^{i s}, s in [0, 2pi), uniform rule.
  static TwistorCurve circle(cplx center, double radius, std::size_t samples) {
    require(samples >= 2 && radius > 0.0, "circle curve needs radius > 0 and >= 2 samples");
    TwistorCurve c;
    const double h = rotations::kTwoPi / static_cast<double>(samples);
    for (std::size_t j = 0; j < samples; ++j) {
      const cplx e = std::polar(1.0, h * static_cast<double>(j));
      c.points.push_back(rotations::TwistorPoint::from(center + radius * e));
      c.tangents.push_back(cplx(0.0, 1.0) * radius * e);
      c.weights.push_back(h);
    }
    return c;
  }

  /// The real omega axis traversed from -inf to +inf, parameterized by the
  /// angle phi through omega = cot(phi / 2) at midpoint nodes
  /// phi_j = 2 pi (j + 1/2) / M. |d omega / d phi| = (omega^2 + 1) / 2.
  static TwistorCurve real_axis(std::size_t samples) {
    require(samples >= 2, "real-axis curve needs >= 2 samples");
    TwistorCurve c;
    const double h = rotations::kTwoPi / static_cast<double>(samples);
    for (std::size_t j = 0; j < samples; ++j) {
      const auto w = rotations::angle_to_twistor(h * (static_cast<double>(j) + 0.5));
      c.points.push_back(w);
      c.tangents.push_back(0.5 * (w.u * w.u + 1.0));
      c.weights.push_back(h);
    }
    return c;
  }
};

/// V(x, y, z) = sum_s w_s h(phase(omega_s, x); omega_s) (d omega/ds)_s.
inline ScalarField twistor_superpose(const TwistorIntegrand& h, const TwistorCurve& curve,
                                     const GridSpec& grid) {
  require(curve.size() > 0 && curve.tangents.size() == curve.size() &&
              curve.weights.size() == curve.size(),
          "twistor curve arrays must be non-empty and of equal length");
  for (const auto& w : curve.points)
    require(std::isfinite(w.u) && std::isfinite(w.v), "curve samples must be finite");
  const auto ax = detail::axes_by_name<3>(grid, {"x", "y", "z"});
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const std::array<double, 3> x{p[ax[0]], p[ax[1]], p[ax[2]]};
    cplx acc = 0.0;
    for (std::size_t s = 0; s < curve.size(); ++s)
      acc += curve.weights[s] *
             h(rotations::twistor_phase(curve.points[s], x), curve.points[s].omega()) *
             curve.tangents[s];
    return acc;
  });
}

}  // namespace pwd::planewave

#endif  // PWD_PLANEWAVE_HPP

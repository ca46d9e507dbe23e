#ifndef PWD_DESCENT_HPP
#define PWD_DESCENT_HPP

// Singular-kernel representations: the (1+3) retarded-potential form over a
// sphere, the (1+2) disk formula, spherical means and the odd-dimension
// solution, the Laplace source integral over a plane, and the axisymmetric
// line-source and analytic-segment variants.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/quadrature.hpp"
#include "pwd/rotations.hpp"

namespace pwd::descent {

using rotations::DirectionSet;

/// Closed interval [lo, hi] per coordinate.
using SupportBox = std::vector<std::pair<double, double>>;

/// A source function over real points, optionally with a univariate complex
/// continuation and a declared rectangular support.
class SourceSampler {
 public:
  using RealFn = std::function<cplx(std::span<const double>)>;
  using ComplexFn = std::function<cplx(cplx)>;

  SourceSampler(RealFn fn, std::size_t arity) : real_(std::move(fn)), arity_(arity) {
    require(static_cast<bool>(real_), "source function is empty");
    require(arity_ >= 1 && arity_ <= 3, "source arity must be 1, 2 or 3");
  }

  static SourceSampler from_family(const AnalyticFamily& f, std::size_t arity) {
    require(f.accepts_rank(arity),
            f.kind_name() + " family cannot be sampled in " + std::to_string(arity) +
                " dimensions");
    SourceSampler s([f](std::span<const double> x) { return f(x); }, arity);
    if (arity == 1 && f.complex_evaluable()) {
      s.complex_ = [f](cplx z) { return f.at(z); };
      if (const auto* r = std::get_if<family::RationalInverse>(&f.variant()))
        s.pole_ = r->pole;
    }
    return s;
  }

  SourceSampler with_support(SupportBox box) const {
    require(box.size() == arity_, "support box dimension must match the source arity");
    for (const auto& [lo, hi] : box)
      require(std::isfinite(lo) && std::isfinite(hi) && hi > lo,
              "support intervals need finite bounds with hi > lo");
    SourceSampler s = *this;
    s.support_ = std::move(box);
    return s;
  }

  std::size_t arity() const { return arity_; }
  const std::optional<SupportBox>& support() const { return support_; }
  bool complex_evaluable() const { return static_cast<bool>(complex_); }
  const std::optional<cplx>& pole() const { return pole_; }

  cplx operator()(std::span<const double> x) const { return real_(x); }

  cplx at(cplx z) const {
    require(complex_evaluable(), "source has no complex continuation");
    return complex_(z);
  }

 private:
  RealFn real_;
  ComplexFn complex_;
  std::size_t arity_;
  std::optional<SupportBox> support_;
  std::optional<cplx> pole_;
};

namespace detail {

inline void require_sphere(const DirectionSet& q) {
  require(q.dim == 3 && q.size() > 0, "direction set must be a non-empty set on S^2");
}

inline cplx sphere_sum(const SourceSampler& psi, const DirectionSet& q,
                       const std::array<double, 3>& x, double radius) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const std::array<double, 3> p{x[0] + radius * q.nodes[j][0],
                                  x[1] + radius * q.nodes[j][1],
                                  x[2] + radius * q.nodes[j][2]};
    acc += q.weights[j] * psi(p);
  }
  return acc;
}

}  // namespace detail

/// u(t, x) = t sum_j w_j psi(x + t n_j); u_t(0, x) = 4 pi psi(x).
inline cplx kirchhoff13(const SourceSampler& psi, const DirectionSet& q, double t,
                        const std::array<double, 3>& x) {
  require(psi.arity() == 3, "kirchhoff13 needs a source over R^3");
  detail::require_sphere(q);
  require(t >= 0.0, "kirchhoff13 needs t >= 0");
  return t * detail::sphere_sum(psi, q, x, t);
}

/// Q(x, radius) = (1/|S|) sum_j w_j psi(x + radius n_j) over S^1 or S^2.
inline cplx spherical_mean(const SourceSampler& psi, std::span<const double> x,
                           double radius, const DirectionSet& q) {
  require(radius >= 0.0, "spherical mean radius must be >= 0");
  require(q.size() > 0 && (q.dim == 2 || q.dim == 3), "direction set is empty");
  require(x.size() == q.dim && psi.arity() == q.dim,
          "point, source and directions must share a dimension");
  cplx acc = 0.0;
  std::array<double, 3> p{};
  for (std::size_t j = 0; j < q.size(); ++j) {
    for (std::size_t d = 0; d < q.dim; ++d) p[d] = x[d] + radius * q.nodes[j][d];
    acc += q.weights[j] * psi(std::span<const double>(p.data(), q.dim));
  }
  return acc / rotations::sphere_measure(q.dim);
}

/// t Q(x, t), the N = 3 solution with u(0) = 0 and u_t(0) = psi.
inline cplx odd_n_solution_at(const SourceSampler& psi, const DirectionSet& q, double t,
                              const std::array<double, 3>& x) {
  require(t >= 0.0, "odd_n_solution needs t >= 0");
  return t * spherical_mean(psi, x, t, q);
}

inline ScalarField odd_n_solution(const SourceSampler& psi, int n, const DirectionSet& q,
                                  const GridSpec& grid) {
  if (n != 3)
    throw Error(ErrorKind::invalid_argument,
                "odd_n_solution supports N = 3 only (got N = " + std::to_string(n) + ")");
  require(psi.arity() == 3, "odd_n_solution needs a source over R^3");
  detail::require_sphere(q);
  require(grid.rank() == 4, "odd_n_solution grid needs axes (t, x, y, z)");
  const std::array<std::size_t, 4> ax{grid.axis_index("t"), grid.axis_index("x"),
                                      grid.axis_index("y"), grid.axis_index("z")};
  require(grid.axis(ax[0]).min >= 0.0, "odd_n_solution needs t >= 0", ErrorKind::domain);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    return odd_n_solution_at(psi, q, p[ax[0]], {p[ax[1]], p[ax[2]], p[ax[3]]});
  });
}

inline ScalarField kirchhoff13_field(const SourceSampler& psi, const DirectionSet& q,
                                     const GridSpec& grid) {
  require(grid.rank() == 4, "kirchhoff13 grid needs axes (t, x, y, z)");
  const std::array<std::size_t, 4> ax{grid.axis_index("t"), grid.axis_index("x"),
                                      grid.axis_index("y"), grid.axis_index("z")};
  require(grid.axis(ax[0]).min >= 0.0, "kirchhoff13 needs t >= 0", ErrorKind::domain);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    return kirchhoff13(psi, q, p[ax[0]], {p[ax[1]], p[ax[2]], p[ax[3]]});
  });
}

/// Disk rule in the substituted variables rho = t sin(a): Gauss-Legendre in
/// a over [0, pi/2] times the uniform angular rule.
struct DiskRule {
  std::vector<double> sin_a;       // per radial node
  std::vector<double> radial_w;    // Gauss-Legendre weight times sin(a)
  std::vector<double> cos_phi, sin_phi;
  double angular_w = 0.0;

  DiskRule(std::size_t radial, std::size_t angular) {
    require(radial >= 1 && angular >= 2,
            "poisson12 needs >= 1 radial and >= 2 angular nodes");
    const QuadratureRule gl = composite_gauss_legendre(0.0, 0.5 * std::numbers::pi, 1, radial);
    for (std::size_t i = 0; i < gl.size(); ++i) {
      sin_a.push_back(std::sin(gl.nodes[i]));
      radial_w.push_back(gl.weights[i] * std::sin(gl.nodes[i]));
    }
    angular_w = rotations::kTwoPi / static_cast<double>(angular);
    for (std::size_t j = 0; j < angular; ++j) {
      const double phi = angular_w * static_cast<double>(j);
      cos_phi.push_back(std::cos(phi));
      sin_phi.push_back(std::sin(phi));
    }
  }
};

/// u(t, x) = \int_{|x'-x| < t} psi(x') / sqrt(t^2 - |x - x'|^2) d^2x', so that
/// u_t(0, x) = 2 pi psi(x).
inline cplx poisson12(const SourceSampler& psi, double t, const std::array<double, 2>& x,
                      const DiskRule& rule) {
  require(psi.arity() == 2, "poisson12 needs a source over R^2");
  require(t > 0.0, "poisson12 needs t > 0", ErrorKind::domain);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rule.sin_a.size(); ++i) {
    const double rho = t * rule.sin_a[i];
    cplx ring = 0.0;
    for (std::size_t j = 0; j < rule.cos_phi.size(); ++j) {
      const std::array<double, 2> p{x[0] + rho * rule.cos_phi[j],
                                    x[1] + rho * rule.sin_phi[j]};
      ring += psi(p);
    }
    acc += rule.radial_w[i] * ring;
  }
  return t * rule.angular_w * acc;
}

inline cplx poisson12(const SourceSampler& psi, double t, const std::array<double, 2>& x,
                      std::size_t radial, std::size_t angular) {
  return poisson12(psi, t, x, DiskRule(radial, angular));
}

inline ScalarField poisson12_field(const SourceSampler& psi, const GridSpec& grid,
                                   std::size_t radial, std::size_t angular) {
  require(grid.rank() == 3, "poisson12 grid needs axes (t, x, y)");
  const std::array<std::size_t, 3> ax{grid.axis_index("t"), grid.axis_index("x"),
                                      grid.axis_index("y")};
  require(grid.axis(ax[0]).min > 0.0, "poisson12 needs t > 0 on the grid",
          ErrorKind::domain);
  const DiskRule rule(radial, angular);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    return poisson12(psi, p[ax[0]], {p[ax[1]], p[ax[2]]}, rule);
  });
}

/// Composite Gauss-Legendre resolution for the finite source integrals.
struct PanelRule {
  std::size_t panels = 8;
  std::size_t order = 10;
};

/// V(x, y, z) = \int\int g(x', y') / sqrt(z^2 + (x-x')^2 + (y-y')^2) dx'dy'
/// over the declared rectangular support of g.
inline ScalarField laplace_source3(const SourceSampler& g, const GridSpec& grid,
                                   PanelRule rule = {}) {
  require(g.arity() == 2, "laplace_source3 needs a source over (x', y')");
  require(g.support().has_value(), "laplace_source3 needs a declared support rectangle");
  require(grid.rank() == 3, "laplace_source3 grid needs axes (x, y, z)");
  const std::array<std::size_t, 3> ax{grid.axis_index("x"), grid.axis_index("y"),
                                      grid.axis_index("z")};
  require(grid.axis(ax[2]).min > 0.0,
          "grid touches the source plane z = 0 where the kernel is singular",
          ErrorKind::domain);
  const auto& box = *g.support();
  const QuadratureRule qx =
      composite_gauss_legendre(box[0].first, box[0].second, rule.panels, rule.order);
  const QuadratureRule qy =
      composite_gauss_legendre(box[1].first, box[1].second, rule.panels, rule.order);
  std::vector<cplx> weighted(qx.size() * qy.size());
  for (std::size_t i = 0; i < qx.size(); ++i)
    for (std::size_t j = 0; j < qy.size(); ++j) {
      const std::array<double, 2> p{qx.nodes[i], qy.nodes[j]};
      weighted[i * qy.size() + j] = qx.weights[i] * qy.weights[j] * g(p);
    }
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double x = p[ax[0]], y = p[ax[1]], z = p[ax[2]];
    cplx acc = 0.0;
    for (std::size_t i = 0; i < qx.size(); ++i) {
      const double dx = x - qx.nodes[i];
      const double base = z * z + dx * dx;
      for (std::size_t j = 0; j < qy.size(); ++j) {
        const double dy = y - qy.nodes[j];
        acc += weighted[i * qy.size() + j] / std::sqrt(base + dy * dy);
      }
    }
    return acc;
  });
}

/// V(rho, x) = \int_a^b g0(x') / sqrt(rho^2 + (x - x')^2) dx', evaluated with
/// x' - x = rho sinh(s), which turns the kernel into ds.
inline ScalarField axisym_line_source(const SourceSampler& g0, const GridSpec& grid,
                                      PanelRule rule = {}) {
  require(g0.arity() == 1, "axisym_line_source needs a source over x'");
  require(g0.support().has_value(), "axisym_line_source needs a declared support interval");
  require(grid.rank() == 2, "axisym_line_source grid needs axes (rho, x)");
  const std::size_t arho = grid.axis_index("rho"), ax = grid.axis_index("x");
  require(grid.axis(arho).min > 0.0, "axisym_line_source needs rho > 0 on the grid",
          ErrorKind::domain);
  const auto [a, b] = g0.support()->front();
  const QuadratureRule unit = composite_gauss_legendre(0.0, 1.0, rule.panels, rule.order);
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double rho = p[arho], x = p[ax];
    const double s0 = std::asinh((a - x) / rho), s1 = std::asinh((b - x) / rho);
    const double len = s1 - s0;
    cplx acc = 0.0;
    for (std::size_t k = 0; k < unit.size(); ++k) {
      const double s = s0 + len * unit.nodes[k];
      const double xp = x + rho * std::sinh(s);
      acc += unit.weights[k] * g0(std::span<const double>(&xp, 1));
    }
    return len * acc;
  });
}

/// V(rho, x) = \int_{x - i rho}^{x + i rho} g0(x') / sqrt(rho^2 + (x - x')^2) dx'
///           = i \int_{-1}^{1} g0(x + i rho s) / sqrt(1 - s^2) ds,
/// by Gauss-Chebyshev with `nodes` points.
inline ScalarField axisym_analytic_segment(const SourceSampler& g0, const GridSpec& grid,
                                           std::size_t nodes) {
  require(g0.complex_evaluable(), "analytic-segment form needs a complex-evaluable g0");
  require(nodes >= 1, "analytic-segment form needs >= 1 node");
  require(grid.rank() == 2, "analytic-segment grid needs axes (rho, x)");
  const std::size_t arho = grid.axis_index("rho"), ax = grid.axis_index("x");
  if (const auto& pole = g0.pole()) {
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const GridPoint p = grid.point(n);
      if (std::abs(pole->real() - p[ax]) <= 1e-12 * (1.0 + std::abs(p[ax])) &&
          std::abs(pole->imag()) <= std::abs(p[arho]) + 1e-12)
        throw Error(ErrorKind::singular,
                    "pole of g0 lies on the integration segment for node " +
                        grid.describe_node(n));
    }
  }
  std::vector<double> s(nodes);
  for (std::size_t k = 0; k < nodes; ++k)
    s[k] = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi /
                    (2.0 * static_cast<double>(nodes)));
  const cplx prefactor(0.0, std::numbers::pi / static_cast<double>(nodes));
  return ScalarField::generate(grid, [&](const GridPoint& p) {
    const double rho = p[arho], x = p[ax];
    cplx acc = 0.0;
    for (double sk : s) acc += g0.at(cplx(x, rho * sk));
    return prefactor * acc;
  });
}

}  // namespace pwd::descent

#endif  // PWD_DESCENT_HPP

#ifndef PWD_VERIFY_HPP
#define PWD_VERIFY_HPP

// Finite-difference residuals, field comparison, convergence-order fits, and
// the closed-form harmonic polynomials matching power-law profiles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/parallel.hpp"
#include "pwd/spectral.hpp"

namespace pwd::verify {

struct ResidualReport {
  ScalarField residual;   // interior nodes only
  double linf = 0.0;
  double l2 = 0.0;        // root mean square over interior nodes
  std::vector<double> h;  // spacing per axis
};

/// Second-derivative coefficient per axis name. An axis named "r" is treated
/// as the cylindrical radius: its coefficient multiplies d_rr + (1/r) d_r.
using AxisCoefficients = std::map<std::string, double>;

inline AxisCoefficients coefficients_for(const spectral::OperatorSpec& op,
                                         const GridSpec& grid) {
  AxisCoefficients c;
  for (const Axis& ax : grid.axes()) c[ax.name] = op.coefficient(ax.name);
  return c;
}

/// sum_a c_a D_a^2 u on interior nodes, with central stencils of order 2
/// (3-point) or 4 (5-point).
inline ResidualReport fd_residual(const ScalarField& field, const AxisCoefficients& coeff,
                                  int order = 2) {
  require(order == 2 || order == 4, "stencil order must be 2 or 4");
  const GridSpec& g = field.grid();
  const std::size_t margin = order == 2 ? 1 : 2;
  std::vector<double> c(g.rank()), h(g.rank());
  std::optional<std::size_t> radial;
  std::vector<Axis> interior;
  for (std::size_t a = 0; a < g.rank(); ++a) {
    const Axis& ax = g.axis(a);
    require(ax.points >= 5, "axis '" + ax.name + "' needs at least 5 points for residuals");
    auto it = coeff.find(ax.name);
    require(it != coeff.end(), "no operator coefficient for axis '" + ax.name + "'");
    c[a] = it->second;
    h[a] = ax.spacing();
    if (ax.name == "r") {
      require(ax.min > 0.0, "cylindrical residual needs r > 0 on the grid",
              ErrorKind::domain);
      radial = a;
    }
    interior.push_back(Axis{ax.name, ax.coordinate(margin),
                            ax.coordinate(ax.points - 1 - margin), ax.points - 2 * margin});
  }
  require(coeff.size() == g.rank(), "operator has coefficients for axes not on the grid");
  GridSpec sub(std::move(interior));
  std::vector<cplx> out(sub.size());
  parallel_for(sub.size(), [&](std::size_t n) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < g.rank(); ++a)
      flat += (sub.index_along(n, a) + margin) * g.stride(a);
    const cplx u0 = field[flat];
    cplx acc = 0.0;
    for (std::size_t a = 0; a < g.rank(); ++a) {
      const std::size_t s = g.stride(a);
      const double inv_h2 = 1.0 / (h[a] * h[a]);
      cplx d2, d1;
      if (order == 2) {
        d2 = (field[flat + s] - 2.0 * u0 + field[flat - s]) * inv_h2;
        d1 = (field[flat + s] - field[flat - s]) / (2.0 * h[a]);
      } else {
        d2 = (-field[flat + 2 * s] + 16.0 * field[flat + s] - 30.0 * u0 +
              16.0 * field[flat - s] - field[flat - 2 * s]) *
             (inv_h2 / 12.0);
        d1 = (-field[flat + 2 * s] + 8.0 * field[flat + s] - 8.0 * field[flat - s] +
              field[flat - 2 * s]) /
             (12.0 * h[a]);
      }
      cplx term = d2;
      if (radial && *radial == a) term += d1 / g.axis(a).coordinate(g.index_along(flat, a));
      acc += c[a] * term;
    }
    out[n] = acc;
  });
  double linf = 0.0, sum2 = 0.0;
  for (const cplx& v : out) {
    linf = std::max(linf, std::abs(v));
    sum2 += std::norm(v);
  }
  const double l2 = std::sqrt(sum2 / static_cast<double>(out.size()));
  return ResidualReport{ScalarField(std::move(sub), std::move(out)), linf, l2, std::move(h)};
}

inline ResidualReport fd_residual(const ScalarField& field, const spectral::OperatorSpec& op,
                                  int order = 2) {
  return fd_residual(field, coefficients_for(op, field.grid()), order);
}

/// Norms of a - b, relative quantities measured against b.
inline ErrorReport compare_fields(const ScalarField& a, const ScalarField& b) {
  require(a.grid() == b.grid(), "compared fields must share a grid");
  constexpr double floor = 1e-30;
  ErrorReport r;
  double ref_max = 0.0, diff2 = 0.0, ref2 = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > r.linf_abs) {
      r.linf_abs = d;
      worst = i;
    }
    ref_max = std::max(ref_max, std::abs(b[i]));
    diff2 += d * d;
    ref2 += std::norm(b[i]);
  }
  r.linf_rel = r.linf_abs / std::max(ref_max, floor);
  r.l2_rel = std::sqrt(diff2) / std::max(std::sqrt(ref2), floor);
  r.worst_point = a.grid().point(worst);
  return r;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  require(xy.size() >= 3, "slope fit needs at least 3 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    require(x > 0.0 && std::isfinite(x), "slope fit needs positive abscissae");
    require(y > 0.0 && std::isfinite(y), "slope fit needs positive errors");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(xy.size());
  const double den = n * sxx - sx * sx;
  require(den > 0.0, "slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

/// Slope of log(error) against log(h) for strictly decreasing h.
inline double convergence_slope(const std::vector<std::pair<double, double>>& h_error) {
  require(h_error.size() >= 3, "convergence fit needs at least 3 (h, error) pairs");
  for (std::size_t i = 1; i < h_error.size(); ++i)
    require(h_error[i].first < h_error[i - 1].first, "spacings must strictly decrease");
  return loglog_slope(h_error);
}

/// Closed-form average of (z - i x cos(phi) - i y sin(phi))^n over phi, and
/// the profile xi^n / (2 pi) whose circle superposition reproduces it.
struct HarmonicOracle {
  AnalyticFamily field;
  AnalyticFamily profile;
};

inline HarmonicOracle harmonic_poly_oracle(int n) {
  require(n >= 0 && n <= 6, "harmonic_poly_oracle supports degrees 0 to 6");
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1, 0.0);
  c.back() = 1.0 / (2.0 * std::numbers::pi);
  return {AnalyticFamily::harmonic_poly(n), AnalyticFamily::polynomial(std::move(c))};
}

}  // namespace pwd::verify

#endif  // PWD_VERIFY_HPP

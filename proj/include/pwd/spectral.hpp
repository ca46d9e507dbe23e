#ifndef PWD_SPECTRAL_HPP
#define PWD_SPECTRAL_HPP

// Direct Fourier synthesis of solutions of constant-coefficient second-order
// operators, and the dispersion branch that makes each plane wave a solution.
//
// Normalization: u(x_{N+1}, x) = (2 pi)^{-N/2} \int f(k) exp(i(k_{N+1}(k) x_{N+1}
// + k.x)) d^N k. The sine form used for initial-value problems,
// u = \int A(k) exp(i k.x) sin(|k| t) d^N k, is evaluated with the same
// (2 pi)^{-N/2} prefactor; an unnormalized amplitude A' corresponds to
// A = (2 pi)^{N/2} A'.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/parallel.hpp"
#include "pwd/quadrature.hpp"

namespace pwd::spectral {

enum class OperatorKind { laplace, wave, aniso_laplace };

/// Diagonal operator sum_i c_i d^2/dx_i^2 identified by kind.
///   laplace(d):      all c_i = 1, axes (x[, y], z)
///   wave(N):         c_t = 1, spatial c_i = -1, axes (t, x[, y[, z]])
///   aniso(alpha, beta): (c_z, c_x, c_y) = (1, alpha, beta)
class OperatorSpec {
 public:
  static OperatorSpec laplace(int dims) {
    require(dims == 2 || dims == 3, "laplace operator supports 2 or 3 dimensions");
    return OperatorSpec(OperatorKind::laplace, dims, 1.0, 1.0);
  }
  static OperatorSpec wave(int spatial_dims) {
    require(spatial_dims >= 1 && spatial_dims <= 3,
            "wave operator supports 1 to 3 spatial dimensions");
    return OperatorSpec(OperatorKind::wave, spatial_dims, 1.0, 1.0);
  }
  static OperatorSpec aniso_laplace(double alpha, double beta) {
    require(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta),
            "anisotropic laplace needs alpha > 0 and beta > 0");
    return OperatorSpec(OperatorKind::aniso_laplace, 3, alpha, beta);
  }

  OperatorKind kind() const { return kind_; }
  int dims() const { return dims_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool is_laplace_type() const { return kind_ != OperatorKind::wave; }

  std::string name() const {
    switch (kind_) {
      case OperatorKind::laplace: return "laplace(" + std::to_string(dims_) + ")";
      case OperatorKind::wave: return "wave(1+" + std::to_string(dims_) + ")";
      default: return "aniso-laplace";
    }
  }

  /// z for Laplace kinds, t for the wave equation.
  std::string distinguished_axis() const {
    return kind_ == OperatorKind::wave ? "t" : "z";
  }

  std::vector<std::string> transverse_axes() const {
    static const char* xyz[] = {"x", "y", "z"};
    std::size_t n = transverse_dims();
    return std::vector<std::string>(xyz, xyz + n);
  }

  std::size_t transverse_dims() const {
    if (kind_ == OperatorKind::wave) return static_cast<std::size_t>(dims_);
    return static_cast<std::size_t>(dims_ - 1);
  }

  /// Coefficient of d^2/d(axis)^2. A radial axis "r" takes the coefficient of
  /// the isotropic transverse plane.
  double coefficient(std::string_view axis) const {
    if (axis == distinguished_axis()) return 1.0;
    const double spatial = kind_ == OperatorKind::wave ? -1.0 : 1.0;
    if (kind_ == OperatorKind::aniso_laplace) {
      if (axis == "x") return alpha_;
      if (axis == "y") return beta_;
      if (axis == "r") {
        require(alpha_ == beta_, "radial axis requires alpha == beta");
        return alpha_;
      }
    } else {
      if (axis == "r") return spatial;
      for (const auto& name : transverse_axes())
        if (axis == name) return spatial;
    }
    throw Error(ErrorKind::invalid_argument,
                "axis '" + std::string(axis) + "' is not a coordinate of " + name());
  }

 private:
  OperatorSpec(OperatorKind kind, int dims, double alpha, double beta)
      : kind_(kind), dims_(dims), alpha_(alpha), beta_(beta) {}

  OperatorKind kind_;
  int dims_;
  double alpha_;
  double beta_;
};

enum class Branch { positive, negative };

/// Root k_{N+1}(k) of the dispersion relation. Laplace kinds take the root with
/// positive imaginary part (decay for z > 0); the wave equation takes +|k|
/// unless the negative branch is requested.
inline cplx dispersion_root(const OperatorSpec& op, std::span<const double> k,
                            Branch branch = Branch::positive) {
  require(k.size() == op.transverse_dims(),
          "wavevector has " + std::to_string(k.size()) + " components, operator needs " +
              std::to_string(op.transverse_dims()));
  double q2 = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    require(std::isfinite(k[i]), "wavevector must be finite");
    double c = 1.0;
    if (op.kind() == OperatorKind::aniso_laplace) c = i == 0 ? op.alpha() : op.beta();
    q2 += c * k[i] * k[i];
  }
  const double q = std::sqrt(q2);
  if (op.kind() == OperatorKind::wave)
    return branch == Branch::positive ? cplx(q, 0.0) : cplx(-q, 0.0);
  return {0.0, q};
}

// ---------------------------------------------------------------------------
// Spectral amplitudes

namespace amplitude {
struct GaussianK {
  double sigma = 1.0;
  std::vector<double> center;  // empty means the origin
};
struct RingK {
  double k0 = 1.0;
  double width = 0.5;
};
struct ExponentialK {
  double scale = 1.0;  // exp(-|k| / scale)
};
struct Tabulated {
  ScalarField samples;  // over k-axes, multilinear, zero outside
};
}  // namespace amplitude

class SpectralAmplitude {
 public:
  using Variant = std::variant<amplitude::GaussianK, amplitude::RingK,
                               amplitude::ExponentialK, amplitude::Tabulated>;

  static SpectralAmplitude gaussian(double sigma, std::vector<double> center = {}) {
    require(sigma > 0.0, "gaussian-k width must be positive");
    return SpectralAmplitude(amplitude::GaussianK{sigma, std::move(center)});
  }
  static SpectralAmplitude ring(double k0, double width) {
    require(k0 >= 0.0 && width > 0.0, "ring-k needs k0 >= 0 and width > 0");
    return SpectralAmplitude(amplitude::RingK{k0, width});
  }
  static SpectralAmplitude exponential(double scale) {
    require(scale > 0.0, "exponential-k scale must be positive");
    return SpectralAmplitude(amplitude::ExponentialK{scale});
  }
  static SpectralAmplitude tabulated(ScalarField samples) {
    require(samples.grid().rank() <= 3, "tabulated amplitude supports up to 3 axes");
    return SpectralAmplitude(amplitude::Tabulated{std::move(samples)});
  }

  const Variant& variant() const { return v_; }

  cplx operator()(std::span<const double> k) const {
    return std::visit(
        [k](const auto& a) -> cplx {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, amplitude::GaussianK>) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < k.size(); ++i) {
              const double c = i < a.center.size() ? a.center[i] : 0.0;
              d2 += (k[i] - c) * (k[i] - c);
            }
            return std::exp(-d2 / (2.0 * a.sigma * a.sigma));
          } else if constexpr (std::is_same_v<T, amplitude::RingK>) {
            const double d = norm(k) - a.k0;
            return std::exp(-d * d / (2.0 * a.width * a.width));
          } else if constexpr (std::is_same_v<T, amplitude::ExponentialK>) {
            return std::exp(-norm(k) / a.scale);
          } else {
            return interpolate(a.samples, k);
          }
        },
        v_);
  }

  /// Radius beyond which |amplitude| < rel_tol times its peak (for tabulated
  /// amplitudes, the radius of the tabulated box).
  double support_radius(double rel_tol = 1e-17) const {
    const double tail = std::sqrt(2.0 * std::log(1.0 / rel_tol));
    return std::visit(
        [&](const auto& a) -> double {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, amplitude::GaussianK>) {
            double c2 = 0.0;
            for (double c : a.center) c2 += c * c;
            return std::sqrt(c2) + a.sigma * tail;
          } else if constexpr (std::is_same_v<T, amplitude::RingK>) {
            return a.k0 + a.width * tail;
          } else if constexpr (std::is_same_v<T, amplitude::ExponentialK>) {
            return a.scale * std::log(1.0 / rel_tol);
          } else {
            double r2 = 0.0;
            for (const Axis& ax : a.samples.grid().axes()) {
              const double m = std::max(std::abs(ax.min), std::abs(ax.max));
              r2 += m * m;
            }
            return std::sqrt(r2);
          }
        },
        v_);
  }

 private:
  explicit SpectralAmplitude(Variant v) : v_(std::move(v)) {}

  static double norm(std::span<const double> k) {
    double s = 0.0;
    for (double v : k) s += v * v;
    return std::sqrt(s);
  }

  static cplx interpolate(const ScalarField& f, std::span<const double> k) {
    const GridSpec& g = f.grid();
    require(k.size() == g.rank(), "tabulated amplitude dimension mismatch");
    std::array<std::size_t, kMaxAxes> base{};
    std::array<double, kMaxAxes> frac{};
    for (std::size_t a = 0; a < g.rank(); ++a) {
      const Axis& ax = g.axis(a);
      if (k[a] < ax.min || k[a] > ax.max) return 0.0;
      const double s = (k[a] - ax.min) / ax.spacing();
      auto i = static_cast<std::size_t>(s);
      if (i >= ax.points - 1) i = ax.points - 2;
      base[a] = i;
      frac[a] = s - static_cast<double>(i);
    }
    cplx acc = 0.0;
    const std::size_t corners = std::size_t{1} << g.rank();
    for (std::size_t c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t flat = 0;
      for (std::size_t a = 0; a < g.rank(); ++a) {
        const bool up = (c >> a) & 1;
        w *= up ? frac[a] : 1.0 - frac[a];
        flat += (base[a] + (up ? 1 : 0)) * g.stride(a);
      }
      if (w != 0.0) acc += w * f[flat];
    }
    return acc;
  }

  Variant v_;
};

namespace detail {

// Separable plane-wave sum: value(node) = sum_j coeff_j * prod_a table_a[i_a][j].
struct PlaneWaveSum {
  std::vector<cplx> coeff;
  std::vector<std::vector<cplx>> tables;  // per grid axis, [i * J + j]
};

inline ScalarField evaluate_sum(const GridSpec& grid, const PlaneWaveSum& sum) {
  const std::size_t nterms = sum.coeff.size();
  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t node) {
    std::array<const cplx*, kMaxAxes> rows{};
    for (std::size_t a = 0; a < grid.rank(); ++a)
      rows[a] = sum.tables[a].data() + grid.index_along(node, a) * nterms;
    cplx acc = 0.0;
    for (std::size_t j = 0; j < nterms; ++j) {
      cplx term = sum.coeff[j];
      for (std::size_t a = 0; a < grid.rank(); ++a) term *= rows[a][j];
      acc += term;
    }
    values[node] = acc;
  });
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw Error(ErrorKind::numerical,
                  "non-finite accumulation at node " + grid.describe_node(i));
  return ScalarField(grid, std::move(values));
}

// Product trapezoid nodes on [-kmax, kmax]^n, skipping negligible amplitudes.
struct KNodes {
  std::vector<std::array<double, 3>> k;
  std::vector<cplx> weight_amp;  // w_k * amp(k) * (2 pi)^{-n/2}
};

inline KNodes k_nodes(const SpectralAmplitude& amp, std::size_t n, double kmax,
                      std::size_t nk) {
  require(kmax > 0.0 && std::isfinite(kmax), "kmax must be positive");
  require(nk >= 2, "need at least 2 k-nodes per axis");
  require(n >= 1 && n <= 3, "k-space dimension must be 1, 2 or 3");
  const QuadratureRule rule = trapezoid(-kmax, kmax, nk);
  const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(n));
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= nk;
  KNodes out;
  std::vector<cplx> all(total);
  std::vector<std::array<double, 3>> ks(total);
  double peak = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::array<double, 3> k{};
    double w = norm;
    std::size_t rem = flat;
    for (std::size_t a = n; a-- > 0;) {
      const std::size_t i = rem % nk;
      rem /= nk;
      k[a] = rule.nodes[i];
      w *= rule.weights[i];
    }
    ks[flat] = k;
    all[flat] = w * amp(std::span<const double>(k.data(), n));
    peak = std::max(peak, std::abs(all[flat]));
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (std::abs(all[flat]) <= 1e-20 * peak || all[flat] == 0.0) continue;
    out.k.push_back(ks[flat]);
    out.weight_amp.push_back(all[flat]);
  }
  return out;
}

// Grid axis -> transverse component index (or -1 for the distinguished axis).
inline std::vector<int> axis_roles(const OperatorSpec& op, const GridSpec& grid) {
  const auto transverse = op.transverse_axes();
  require(grid.rank() == transverse.size() + 1,
          "grid for " + op.name() + " needs " + std::to_string(transverse.size() + 1) +
              " axes");
  std::vector<int> roles(grid.rank(), -2);
  roles[grid.axis_index(op.distinguished_axis())] = -1;
  for (std::size_t d = 0; d < transverse.size(); ++d) {
    const std::size_t a = grid.axis_index(transverse[d]);
    require(roles[a] == -2, "axis '" + transverse[d] + "' assigned twice");
    roles[a] = static_cast<int>(d);
  }
  return roles;
}

}  // namespace detail

/// Truncated trapezoid evaluation of the Fourier-superposition solution over
/// [-kmax, kmax]^N with nk nodes per axis.
inline ScalarField synthesize(const OperatorSpec& op, const SpectralAmplitude& amp,
                              const GridSpec& grid, double kmax, std::size_t nk,
                              Branch branch = Branch::positive) {
  const std::vector<int> roles = detail::axis_roles(op, grid);
  const std::size_t n = op.transverse_dims();
  if (op.is_laplace_type()) {
    const Axis& z = grid.axis(grid.axis_index("z"));
    require(z.min >= 0.0,
            "z_min < 0: the decaying branch diverges below the plane z = 0",
            ErrorKind::domain);
  }
  const detail::KNodes nodes = detail::k_nodes(amp, n, kmax, nk);
  const std::size_t nterms = nodes.k.size();
  detail::PlaneWaveSum sum;
  sum.coeff = nodes.weight_amp;
  sum.tables.resize(grid.rank());
  const cplx i(0.0, 1.0);
  for (std::size_t a = 0; a < grid.rank(); ++a) {
    const Axis& ax = grid.axis(a);
    auto& table = sum.tables[a];
    table.resize(ax.points * nterms);
    for (std::size_t j = 0; j < nterms; ++j) {
      const auto& k = nodes.k[j];
      const cplx rate = roles[a] == -1
                            ? dispersion_root(op, std::span<const double>(k.data(), n), branch)
                            : cplx(k[static_cast<std::size_t>(roles[a])], 0.0);
      for (std::size_t p = 0; p < ax.points; ++p)
        table[p * nterms + j] = std::exp(i * rate * ax.coordinate(p));
    }
  }
  return detail::evaluate_sum(grid, sum);
}

/// u(t, x) = (2 pi)^{-N/2} \int A(k) exp(i k.x) sin(|k| t) d^N k, the solution
/// with u(0, x) = 0 and u_t(0, x) = (2 pi)^{-N/2} \int |k| A(k) exp(i k.x) d^N k.
inline ScalarField wave_sine_synthesize(const SpectralAmplitude& amp,
                                        const GridSpec& grid, double kmax,
                                        std::size_t nk) {
  require(grid.find("t").has_value(), "wave_sine_synthesize needs a 't' axis");
  const std::size_t n = grid.rank() - 1;
  require(n >= 1 && n <= 3, "wave_sine_synthesize supports 1 to 3 spatial axes");
  const OperatorSpec op = OperatorSpec::wave(static_cast<int>(n));
  const std::vector<int> roles = detail::axis_roles(op, grid);
  const detail::KNodes nodes = detail::k_nodes(amp, n, kmax, nk);
  const std::size_t nterms = nodes.k.size();
  detail::PlaneWaveSum sum;
  sum.coeff = nodes.weight_amp;
  sum.tables.resize(grid.rank());
  const cplx i(0.0, 1.0);
  for (std::size_t a = 0; a < grid.rank(); ++a) {
    const Axis& ax = grid.axis(a);
    auto& table = sum.tables[a];
    table.resize(ax.points * nterms);
    for (std::size_t j = 0; j < nterms; ++j) {
      const auto& k = nodes.k[j];
      if (roles[a] == -1) {
        const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        for (std::size_t p = 0; p < ax.points; ++p)
          table[p * nterms + j] = std::sin(kn * ax.coordinate(p));
      } else {
        const double kc = k[static_cast<std::size_t>(roles[a])];
        for (std::size_t p = 0; p < ax.points; ++p)
          table[p * nterms + j] = std::exp(i * kc * ax.coordinate(p));
      }
    }
  }
  return detail::evaluate_sum(grid, sum);
}

}  // namespace pwd::spectral

#endif  // PWD_SPECTRAL_HPP

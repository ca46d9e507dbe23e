#ifndef PWD_RADON_HPP
#define PWD_RADON_HPP

// Radon transform of sampled fields over lines (N = 2) and planes (N = 3),
// the reduced two-dimensional operator for a direction, the parity-dependent
// plane-wave profiles, and backprojection.
//
// Inversion formulas used:
//   N = 2: F = (1 / 4 pi) H[d_rho u^],   u(x) = \oint F(n.x; n) dphi
//   N = 3: F = -(1 / 8 pi^2) d_rho^2 u^, u(x) = \oint F(n.x; n) dOmega
// with H f(t) = (1/pi) PV \int f(s) / (t - s) ds.

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/interp.hpp"
#include "pwd/parallel.hpp"
#include "pwd/rotations.hpp"
#include "pwd/spectral.hpp"

namespace pwd::radon {

using rotations::Direction;
using rotations::DirectionSet;

/// Transform samples on a (level, direction, rho) lattice. Values are stored
/// with rho fastest, then direction, then the optional level axis.
struct Sinogram {
  DirectionSet directions;
  Axis rho;
  std::optional<Axis> level;
  std::vector<cplx> values;

  std::size_t levels() const { return level ? level->points : 1; }
  std::size_t offset(std::size_t lvl, std::size_t dir) const {
    return (lvl * directions.size() + dir) * rho.points;
  }
  std::span<const cplx> row(std::size_t dir, std::size_t lvl = 0) const {
    return {values.data() + offset(lvl, dir), rho.points};
  }
  cplx at(std::size_t dir, std::size_t irho, std::size_t lvl = 0) const {
    return values[offset(lvl, dir) + irho];
  }
};

struct RadonOptions {
  bool allow_truncation = false;  // skip the boundary-decay precondition
  double decay_tolerance = 1e-10;
};

namespace detail {

inline constexpr const char* kSpatial[] = {"x", "y", "z"};

struct Layout {
  std::size_t dim = 2;
  std::array<std::size_t, 3> spatial{};
  std::optional<std::size_t> level;
};

inline Layout layout_of(const GridSpec& g, std::size_t dim) {
  require(dim == 2 || dim == 3, "Radon transforms are implemented for N = 2 and N = 3");
  require(g.rank() == dim || g.rank() == dim + 1,
          "field needs the " + std::to_string(dim) + " spatial axes and at most one level axis");
  Layout l;
  l.dim = dim;
  std::vector<bool> used(g.rank(), false);
  for (std::size_t d = 0; d < dim; ++d) {
    l.spatial[d] = g.axis_index(kSpatial[d]);
    used[l.spatial[d]] = true;
  }
  for (std::size_t a = 0; a < g.rank(); ++a)
    if (!used[a]) l.level = a;
  return l;
}

inline void check_decay(const ScalarField& f, const Layout& l, double tol) {
  const GridSpec& g = f.grid();
  double peak = 0.0, edge = 0.0;
  std::size_t worst = 0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double v = std::abs(f[n]);
    peak = std::max(peak, v);
    bool boundary = false;
    for (std::size_t d = 0; d < l.dim; ++d) {
      const std::size_t i = g.index_along(n, l.spatial[d]);
      boundary = boundary || i == 0 || i + 1 == g.axis(l.spatial[d]).points;
    }
    if (boundary && v > edge) {
      edge = v;
      worst = n;
    }
  }
  if (edge > tol * peak)
    throw Error(ErrorKind::domain,
                "field is truncated: boundary value at " + g.describe_node(worst) +
                    " is " + std::to_string(peak > 0 ? edge / peak : 0.0) +
                    " of the maximum (set allow_truncation to override)");
}

// Multilinear interpolation of one level of a field; zero outside the box.
struct Interpolator {
  const ScalarField& f;
  Layout l;
  std::size_t level_index = 0;

  cplx operator()(const std::array<double, 3>& p) const {
    const GridSpec& g = f.grid();
    std::array<std::size_t, 3> base{};
    std::array<double, 3> frac{};
    std::size_t flat0 = l.level ? level_index * g.stride(*l.level) : 0;
    for (std::size_t d = 0; d < l.dim; ++d) {
      const Axis& ax = g.axis(l.spatial[d]);
      if (!(p[d] >= ax.min && p[d] <= ax.max)) return 0.0;
      const double s = (p[d] - ax.min) / ax.spacing();
      auto i = static_cast<std::size_t>(s);
      if (i >= ax.points - 1) i = ax.points - 2;
      base[d] = i;
      frac[d] = s - static_cast<double>(i);
      flat0 += i * g.stride(l.spatial[d]);
    }
    cplx acc = 0.0;
    const std::size_t corners = std::size_t{1} << l.dim;
    for (std::size_t c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t flat = flat0;
      for (std::size_t d = 0; d < l.dim; ++d) {
        const bool up = (c >> d) & 1;
        w *= up ? frac[d] : 1.0 - frac[d];
        if (up) flat += g.stride(l.spatial[d]);
      }
      acc += w * f[flat];
    }
    return acc;
  }
};

// Orthonormal tangent basis of the plane normal to n (N = 3).
inline std::array<std::array<double, 3>, 2> tangent_basis(const Direction& n) {
  std::array<double, 3> a{0, 0, 0};
  std::size_t least = 0;
  for (std::size_t d = 1; d < 3; ++d)
    if (std::abs(n[d]) < std::abs(n[least])) least = d;
  a[least] = 1.0;
  std::array<double, 3> e1{n[1] * a[2] - n[2] * a[1], n[2] * a[0] - n[0] * a[2],
                           n[0] * a[1] - n[1] * a[0]};
  const double len = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& v : e1) v /= len;
  const std::array<double, 3> e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                                 n[0] * e1[1] - n[1] * e1[0]};
  return {e1, e2};
}

}  // namespace detail

/// u^(rho, n) = \int u(x) delta(rho - n.x) d^N x, by sampling the hyperplane
/// at the finest field spacing with multilinear interpolation and trapezoid
/// weights. A field axis other than x, y[, z] becomes the sinogram level axis.
inline Sinogram radon_transform(const ScalarField& field, const DirectionSet& dirs,
                                const Axis& rho, const RadonOptions& opt = {}) {
  require(dirs.size() > 0, "Radon transform needs at least one direction");
  require(rho.points >= 2 && rho.max > rho.min, "rho grid needs >= 2 points and max > min");
  const GridSpec& g = field.grid();
  const detail::Layout l = detail::layout_of(g, dirs.dim);
  if (!opt.allow_truncation) detail::check_decay(field, l, opt.decay_tolerance);

  double ds = INFINITY, reach2 = 0.0;
  for (std::size_t d = 0; d < l.dim; ++d) {
    const Axis& ax = g.axis(l.spatial[d]);
    ds = std::min(ds, ax.spacing());
    const double m = std::max(std::abs(ax.min), std::abs(ax.max));
    reach2 += m * m;
  }
  const double reach = std::sqrt(reach2);
  const auto half = static_cast<long>(std::ceil(reach / ds));

  Sinogram out;
  out.directions = dirs;
  out.rho = rho;
  if (l.level) out.level = g.axis(*l.level);
  const std::size_t nlev = out.levels(), ndir = dirs.size();
  out.values.assign(nlev * ndir * rho.points, 0.0);

  std::vector<std::array<std::array<double, 3>, 2>> bases(ndir);
  for (std::size_t j = 0; j < ndir; ++j) {
    const Direction& n = dirs.nodes[j];
    if (l.dim == 2)
      bases[j][0] = {-n[1], n[0], 0.0};
    else
      bases[j] = detail::tangent_basis(n);
  }

  parallel_for(nlev * ndir * rho.points, [&](std::size_t task) {
    const std::size_t ir = task % rho.points;
    const std::size_t j = (task / rho.points) % ndir;
    const std::size_t lvl = task / (rho.points * ndir);
    const detail::Interpolator interp{field, l, lvl};
    const Direction& n = dirs.nodes[j];
    const double r = rho.coordinate(ir);
    const std::array<double, 3> foot{r * n[0], r * n[1], l.dim == 3 ? r * n[2] : 0.0};
    const auto& e = bases[j];
    cplx acc = 0.0;
    if (l.dim == 2) {
      for (long k = -half; k <= half; ++k) {
        const double s = ds * static_cast<double>(k);
        acc += interp({foot[0] + s * e[0][0], foot[1] + s * e[0][1], 0.0});
      }
      acc *= ds;
    } else {
      const double disk2 = reach2 - r * r;
      if (disk2 > 0.0) {
        for (long a = -half; a <= half; ++a) {
          const double s1 = ds * static_cast<double>(a);
          if (s1 * s1 > disk2) continue;
          for (long b = -half; b <= half; ++b) {
            const double s2 = ds * static_cast<double>(b);
            if (s1 * s1 + s2 * s2 > disk2) continue;
            acc += interp({foot[0] + s1 * e[0][0] + s2 * e[1][0],
                           foot[1] + s1 * e[0][1] + s2 * e[1][1],
                           foot[2] + s1 * e[0][2] + s2 * e[1][2]});
          }
        }
      }
      acc *= ds * ds;
    }
    out.values[out.offset(lvl, j) + ir] = acc;
  });
  return out;
}

/// Largest |u^(rho, n) - u^(-rho, -n)| over antipodal direction pairs present
/// in the set. Requires a rho grid symmetric about zero.
inline double evenness_defect(const Sinogram& s) {
  require(std::abs(s.rho.min + s.rho.max) <= 1e-12 * (s.rho.max - s.rho.min),
          "evenness check needs a rho grid symmetric about 0");
  double worst = 0.0;
  const auto& d = s.directions;
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = 0; b < d.size(); ++b) {
      double sum = 0.0;
      for (std::size_t c = 0; c < d.dim; ++c) sum += std::abs(d.nodes[a][c] + d.nodes[b][c]);
      if (sum > 1e-12) continue;
      for (std::size_t lvl = 0; lvl < s.levels(); ++lvl)
        for (std::size_t i = 0; i < s.rho.points; ++i)
          worst = std::max(worst,
                           std::abs(s.at(a, i, lvl) - s.at(b, s.rho.points - 1 - i, lvl)));
    }
  return worst;
}

/// Trapezoid integral of u^ over rho for one direction.
inline cplx sinogram_mass(const Sinogram& s, std::size_t dir, std::size_t lvl = 0) {
  const auto r = s.row(dir, lvl);
  cplx acc = 0.5 * (r.front() + r.back());
  for (std::size_t i = 1; i + 1 < r.size(); ++i) acc += r[i];
  return acc * s.rho.spacing();
}

// ---------------------------------------------------------------------------
// Reduced operator

struct ReducedOperator {
  double c_level = 1.0;  // coefficient of the distinguished coordinate
  double c_rho = 1.0;
};

/// Substitutes grad_x -> n d_rho: c_rho = sum_i c_i n_i^2 over transverse axes.
inline ReducedOperator reduced_operator(const spectral::OperatorSpec& op,
                                        std::span<const double> n) {
  const auto axes = op.transverse_axes();
  require(n.size() == axes.size(),
          "direction must have " + std::to_string(axes.size()) + " components for " +
              op.name());
  double norm2 = 0.0, c_rho = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    norm2 += n[i] * n[i];
    c_rho += op.coefficient(axes[i]) * n[i] * n[i];
  }
  require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-14, "direction is not a unit vector",
          ErrorKind::domain);
  // Equal transverse coefficients: sum_i c n_i^2 = c exactly for unit n.
  bool isotropic = true;
  for (const auto& a : axes) isotropic = isotropic && op.coefficient(a) == op.coefficient(axes[0]);
  if (isotropic) c_rho = op.coefficient(axes[0]);
  return {op.coefficient(op.distinguished_axis()), c_rho};
}

inline ReducedOperator reduced_operator(const spectral::OperatorSpec& op, const Direction& n) {
  return reduced_operator(op, n.components());
}

// ---------------------------------------------------------------------------
// Differentiation and the Hilbert transform

/// d^m/drho^m (m = 1, 2) by 4th-order central differences, with 5-point
/// one-sided stencils at the two nodes nearest each end.
inline std::vector<cplx> rho_derivative(std::span<const cplx> f, double h, int m) {
  require(m == 1 || m == 2, "only first and second rho-derivatives are provided");
  const std::size_t n = f.size();
  require(n >= 5, "rho-derivatives need at least 5 samples");
  std::vector<cplx> d(n);
  if (m == 1) {
    const double s = 1.0 / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i)
      d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                 3.0 * f[n - 5]) * s;
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                 f[n - 5]) * s;
  } else {
    const double s = 1.0 / (12.0 * h * h);
    for (std::size_t i = 2; i + 2 < n; ++i)
      d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * s;
    d[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) * s;
    d[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) * s;
    d[n - 1] = (35.0 * f[n - 1] - 104.0 * f[n - 2] + 114.0 * f[n - 3] - 56.0 * f[n - 4] +
                11.0 * f[n - 5]) * s;
    d[n - 2] = (11.0 * f[n - 1] - 20.0 * f[n - 2] + 6.0 * f[n - 3] + 4.0 * f[n - 4] -
                f[n - 5]) * s;
  }
  return d;
}

namespace detail {

// Second-order counterpart of rho_derivative on interior nodes, used to detect
// under-resolved rho grids.
inline double resolution_defect(std::span<const cplx> f, double h, int m,
                                const std::vector<cplx>& d4) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < f.size(); ++i) {
    const cplx d2 = m == 1 ? (f[i + 1] - f[i - 1]) / (2.0 * h)
                           : (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    diff = std::max(diff, std::abs(d2 - d4[i]));
    scale = std::max(scale, std::abs(d4[i]));
  }
  return scale > 0.0 ? diff / scale : 0.0;
}

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

inline std::atomic<std::size_t>& hilbert_counter() {
  static std::atomic<std::size_t> count{0};
  return count;
}

}  // namespace detail

/// Number of hilbert_transform calls made by this process.
inline std::size_t hilbert_call_count() { return detail::hilbert_counter().load(); }

/// (1/pi) PV \int f(s) / (t - s) ds for uniformly sampled f that settles to a
/// common level at both ends. The level is removed first (constants map to
/// 0). The rest is the discrete Hilbert transform of the band-limited
/// interpolant, whose frequency response is -i sgn(frequency) with a zero at
/// DC: a linear convolution with 2 / (pi m) at odd lags m, done by FFT on a
/// 4x zero-padded buffer so no wrap-around occurs. The outermost samples are
/// cosine tapered.
inline std::vector<cplx> hilbert_transform(std::span<const cplx> f,
                                           double decay_tolerance = 1e-8) {
  ++detail::hilbert_counter();
  const std::size_t n = f.size();
  require(n >= 2, "Hilbert transform needs at least 2 samples");
  const cplx level = 0.5 * (f.front() + f.back());
  double peak = 0.0;
  for (const cplx& v : f) peak = std::max(peak, std::abs(v - level));
  if (peak == 0.0) return std::vector<cplx>(n, 0.0);
  double edge = 0.0;
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, n - 2, n - 1})
    edge = std::max(edge, std::abs(f[i] - level));
  require(edge <= decay_tolerance * peak,
          "series does not decay at its ends (relative end value " +
              std::to_string(edge / peak) + ")",
          ErrorKind::domain);

  const std::size_t padded = 4 * n;
  auto alloc = [padded] {
    return static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * padded));
  };
  fftw_complex* sig = alloc();
  fftw_complex* ker = alloc();
  fftw_complex* spec = alloc();
  require(sig && ker && spec, "FFT buffer allocation failed", ErrorKind::numerical);
  fftw_plan sig_fwd, ker_fwd, back;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    sig_fwd = fftw_plan_dft_1d(static_cast<int>(padded), sig, spec, FFTW_FORWARD, FFTW_ESTIMATE);
    ker_fwd = fftw_plan_dft_1d(static_cast<int>(padded), ker, ker, FFTW_FORWARD, FFTW_ESTIMATE);
    back = fftw_plan_dft_1d(static_cast<int>(padded), spec, sig, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  const std::size_t taper = std::max<std::size_t>(1, std::min<std::size_t>(8, n / 8));
  for (std::size_t i = 0; i < padded; ++i) {
    cplx v = 0.0;
    if (i < n) {
      v = f[i] - level;
      const std::size_t from_end = std::min(i, n - 1 - i);
      if (from_end < taper)
        v *= 0.5 * (1.0 - std::cos(std::numbers::pi * (static_cast<double>(from_end) + 0.5) /
                                   static_cast<double>(taper)));
    }
    sig[i][0] = v.real();
    sig[i][1] = v.imag();
    const long lag = i < padded / 2 ? static_cast<long>(i)
                                    : static_cast<long>(i) - static_cast<long>(padded);
    ker[i][0] = lag % 2 != 0 ? 2.0 / (std::numbers::pi * static_cast<double>(lag)) : 0.0;
    ker[i][1] = 0.0;
  }
  fftw_execute(sig_fwd);
  fftw_execute(ker_fwd);
  for (std::size_t k = 0; k < padded; ++k) {
    const cplx r = cplx(spec[k][0], spec[k][1]) * cplx(ker[k][0], ker[k][1]);
    spec[k][0] = r.real();
    spec[k][1] = r.imag();
  }
  fftw_execute(back);
  std::vector<cplx> result(n);
  const double scale = 1.0 / static_cast<double>(padded);
  for (std::size_t i = 0; i < n; ++i) result[i] = scale * cplx(sig[i][0], sig[i][1]);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(sig_fwd);
    fftw_destroy_plan(ker_fwd);
    fftw_destroy_plan(back);
  }
  fftw_free(sig);
  fftw_free(ker);
  fftw_free(spec);
  return result;
}

// ---------------------------------------------------------------------------
// Profiles and reconstruction

struct ProfileOptions {
  double resolution_tolerance = 0.05;  // allowed |D_2nd-order - D_4th-order| / max|D|
};

/// Per-direction plane-wave profiles on the sinogram's (level, rho) lattice:
///   N = 2: F = (1 / 4 pi) H[d_rho u^]
///   N = 3: F = -(1 / 8 pi^2) d_rho^2 u^
inline Sinogram planewave_profile_from_radon(const Sinogram& sino, int n,
                                             const ProfileOptions& opt = {}) {
  require(n == 2 || n == 3, "profiles are implemented for N = 2 and N = 3");
  require(static_cast<std::size_t>(n) == sino.directions.dim,
          "N does not match the sinogram's direction dimension");
  Sinogram out = sino;
  const double h = sino.rho.spacing();
  const std::size_t rows = sino.levels() * sino.directions.size();
  std::vector<double> defects(rows, 0.0);
  parallel_for(rows, [&](std::size_t row) {
    const std::span<const cplx> u(sino.values.data() + row * sino.rho.points,
                                  sino.rho.points);
    const int m = n == 2 ? 1 : 2;
    const std::vector<cplx> d = rho_derivative(u, h, m);
    defects[row] = detail::resolution_defect(u, h, m, d);
    cplx* dst = out.values.data() + row * sino.rho.points;
    if (n == 2) {
      const std::vector<cplx> hd = hilbert_transform(d);
      for (std::size_t i = 0; i < hd.size(); ++i) dst[i] = hd[i] / (4.0 * std::numbers::pi);
    } else {
      const double c = -1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
      for (std::size_t i = 0; i < d.size(); ++i) dst[i] = c * d[i];
    }
  });
  for (std::size_t row = 0; row < rows; ++row)
    require(defects[row] <= opt.resolution_tolerance,
            "rho grid is under-resolved for differentiation (direction " +
                std::to_string(row % sino.directions.size()) + ", defect " +
                std::to_string(defects[row]) + ")",
            ErrorKind::numerical);
  return out;
}

/// u(x) = sum_j w_j F(n_j.x; n_j) with cubic interpolation in rho.
inline ScalarField radon_reconstruct(const Sinogram& profiles, const GridSpec& grid) {
  const auto& dirs = profiles.directions;
  require(dirs.size() > 0, "profile set has no directions");
  require(profiles.rho.points >= 4, "backprojection needs at least 4 rho samples");
  const detail::Layout l = detail::layout_of(grid, dirs.dim);
  require(l.level.has_value() == profiles.level.has_value(),
          "grid and profiles must agree on the presence of a level axis");
  if (l.level)
    require(grid.axis(*l.level) == *profiles.level, "grid level axis differs from the profiles'");

  for (std::size_t j = 0; j < dirs.size(); ++j) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t d = 0; d < l.dim; ++d) {
      const Axis& ax = grid.axis(l.spatial[d]);
      const double a = dirs.nodes[j][d] * ax.min, b = dirs.nodes[j][d] * ax.max;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    if (lo < profiles.rho.min - 1e-12 || hi > profiles.rho.max + 1e-12)
      throw Error(ErrorKind::domain,
                  "rho range [" + std::to_string(profiles.rho.min) + ", " +
                      std::to_string(profiles.rho.max) + "] does not cover n.x in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "] for direction " +
                      std::to_string(j));
  }

  std::vector<UniformSeries> series(profiles.levels() * dirs.size());
  for (std::size_t lvl = 0; lvl < profiles.levels(); ++lvl)
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const auto r = profiles.row(j, lvl);
      series[lvl * dirs.size() + j] =
          UniformSeries{profiles.rho.min, profiles.rho.spacing(), {r.begin(), r.end()}};
    }

  return ScalarField::generate(grid, [&](const GridPoint& p) {
    std::size_t lvl = 0;
    if (l.level) {
      const Axis& ax = grid.axis(*l.level);
      lvl = static_cast<std::size_t>(std::lround((p[*l.level] - ax.min) / ax.spacing()));
    }
    std::array<double, 3> x{};
    for (std::size_t d = 0; d < l.dim; ++d) x[d] = p[l.spatial[d]];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double r = std::clamp(dirs.nodes[j].dot(x), profiles.rho.min, profiles.rho.max);
      acc += dirs.weights[j] * series[lvl * dirs.size() + j].value(r);
    }
    return acc;
  });
}

}  // namespace pwd::radon

#endif  // PWD_RADON_HPP

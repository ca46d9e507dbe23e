#ifndef PWD_FIELDS_HPP
#define PWD_FIELDS_HPP

// Rectilinear grids, complex sampled fields, and the analytic function
// families used as profiles, sources, and closed-form references.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pwd/detail/harmonic_poly.hpp"
#include "pwd/error.hpp"
#include "pwd/parallel.hpp"

namespace pwd {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxAxes = 4;
inline constexpr std::size_t kDefaultSampleCap = std::size_t{1} << 24;

using GridPoint = std::array<double, kMaxAxes>;

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;

  double spacing() const { return (max - min) / static_cast<double>(points - 1); }

  // The ratio form keeps symmetric grids exactly symmetric about zero.
  double coordinate(std::size_t i) const {
    if (i + 1 == points) return max;
    return min + (max - min) * (static_cast<double>(i) /
                                static_cast<double>(points - 1));
  }

  bool operator==(const Axis&) const = default;
};

/// Uniform rectilinear grid. Node values are stored row-major: the last axis
/// varies fastest.
class GridSpec {
 public:
  GridSpec() = default;

  explicit GridSpec(std::vector<Axis> axes,
                    std::size_t sample_cap = kDefaultSampleCap)
      : axes_(std::move(axes)) {
    require(!axes_.empty() && axes_.size() <= kMaxAxes,
            "grid must have between 1 and 4 axes");
    size_ = 1;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      const Axis& ax = axes_[a];
      require(!ax.name.empty(), "grid axis names must be non-empty");
      require(ax.points >= 2, "axis '" + ax.name + "' needs at least 2 points");
      require(std::isfinite(ax.min) && std::isfinite(ax.max) && ax.max > ax.min,
              "axis '" + ax.name + "' requires finite bounds with max > min");
      for (std::size_t b = 0; b < a; ++b)
        require(axes_[b].name != ax.name, "duplicate axis name '" + ax.name + "'");
      require(ax.points <= sample_cap / size_,
              "grid exceeds the sample cap of " + std::to_string(sample_cap));
      size_ *= ax.points;
    }
    strides_.assign(axes_.size(), 1);
    for (std::size_t a = axes_.size() - 1; a > 0; --a)
      strides_[a - 1] = strides_[a] * axes_[a].points;
  }

  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t a) const { return axes_.at(a); }
  std::size_t stride(std::size_t a) const { return strides_.at(a); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t a = 0; a < axes_.size(); ++a)
      if (axes_[a].name == name) return a;
    return std::nullopt;
  }

  std::size_t axis_index(std::string_view name) const {
    auto a = find(name);
    require(a.has_value(), "grid has no axis named '" + std::string(name) + "'");
    return *a;
  }

  std::size_t index_along(std::size_t flat, std::size_t a) const {
    return (flat / strides_[a]) % axes_[a].points;
  }

  GridPoint point(std::size_t flat) const {
    GridPoint p{};
    for (std::size_t a = 0; a < axes_.size(); ++a)
      p[a] = axes_[a].coordinate(index_along(flat, a));
    return p;
  }

  std::string describe_node(std::size_t flat) const {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    const GridPoint p = point(flat);
    for (std::size_t a = 0; a < rank(); ++a)
      os << (a ? ", " : "") << axes_[a].name << "=" << p[a];
    os << ")";
    return os.str();
  }

  bool operator==(const GridSpec& other) const { return axes_ == other.axes_; }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Complex samples on a grid. Every stored value is finite.
class ScalarField {
 public:
  ScalarField(GridSpec grid, std::vector<cplx> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    require(values_.size() == grid_.size(),
            "value count " + std::to_string(values_.size()) +
                " does not match grid size " + std::to_string(grid_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
      require(std::isfinite(values_[i].real()) && std::isfinite(values_[i].imag()),
              "non-finite value at node " + grid_.describe_node(i),
              ErrorKind::numerical);
  }

  /// Fills a field from fn(GridPoint) -> cplx, node-parallel.
  template <typename Fn>
  static ScalarField generate(const GridSpec& grid, Fn&& fn) {
    std::vector<cplx> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { values[i] = fn(grid.point(i)); });
    return ScalarField(grid, std::move(values));
  }

  static ScalarField zeros(const GridSpec& grid) {
    return ScalarField(grid, std::vector<cplx>(grid.size()));
  }

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

/// Summary of a field difference against a reference.
struct ErrorReport {
  double linf_abs = 0.0;
  double linf_rel = 0.0;  // linf_abs / max(max |reference|, 1e-30)
  double l2_rel = 0.0;    // ||a - b||_2 / max(||reference||_2, 1e-30)
  GridPoint worst_point{};
};

// ---------------------------------------------------------------------------
// Analytic families

namespace family {

/// What a polynomial is evaluated on when sampled at a real point.
struct PolyArgument {
  enum class Kind { coordinate, squared_norm };
  Kind kind = Kind::coordinate;
  std::size_t index = 0;
};

struct Polynomial {
  std::vector<cplx> coefficients;  // c0 + c1 s + ... + cd s^d
  PolyArgument argument;
};

struct Gaussian {
  std::vector<double> center;  // exp(-|x - center|^2 / (2 width^2))
  double width = 1.0;
};

struct DampedExponential {
  cplx amplitude = 1.0;  // amplitude * exp(-decay * s)
  double decay = 1.0;
};

struct RationalInverse {
  cplx pole = 0.0;  // 1 / (s - pole)
};

struct HarmonicPoly {
  int degree = 0;
  std::vector<detail::Monomial> terms;
};

}  // namespace family

/// A closed-form function family. Univariate members can be evaluated at
/// complex arguments (analytic continuation is exact for these families).
class AnalyticFamily {
 public:
  using Variant = std::variant<family::Polynomial, family::Gaussian,
                               family::DampedExponential, family::RationalInverse,
                               family::HarmonicPoly>;

  static AnalyticFamily polynomial(std::vector<cplx> coefficients,
                                   family::PolyArgument argument = {}) {
    require(!coefficients.empty() && coefficients.size() <= 17,
            "polynomial degree must lie in [0, 16]");
    return AnalyticFamily(family::Polynomial{std::move(coefficients), argument});
  }
  static AnalyticFamily gaussian(std::vector<double> center, double width) {
    require(width > 0.0 && std::isfinite(width), "gaussian width must be positive");
    require(!center.empty() && center.size() <= kMaxAxes,
            "gaussian center must have 1 to 4 components");
    return AnalyticFamily(family::Gaussian{std::move(center), width});
  }
  static AnalyticFamily damped_exponential(cplx amplitude, double decay) {
    require(std::isfinite(decay), "damped exponential decay must be finite");
    return AnalyticFamily(family::DampedExponential{amplitude, decay});
  }
  static AnalyticFamily rational_inverse(cplx pole) {
    return AnalyticFamily(family::RationalInverse{pole});
  }
  static AnalyticFamily harmonic_poly(int degree) {
    return AnalyticFamily(
        family::HarmonicPoly{degree, detail::expand_harmonic_polynomial(degree)});
  }

  const Variant& variant() const { return v_; }

  std::string kind_name() const {
    static constexpr const char* names[] = {"polynomial", "gaussian",
                                            "damped-exponential",
                                            "rational-inverse", "harmonic-poly"};
    return names[v_.index()];
  }

  /// Whether the family is a function of one complex variable.
  bool complex_evaluable() const {
    if (auto* g = std::get_if<family::Gaussian>(&v_)) return g->center.size() == 1;
    return !std::holds_alternative<family::HarmonicPoly>(v_);
  }

  bool accepts_rank(std::size_t rank) const {
    return std::visit(
        [rank](const auto& f) -> bool {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, family::Polynomial>) {
            return f.argument.kind == family::PolyArgument::Kind::squared_norm ||
                   f.argument.index < rank;
          } else if constexpr (std::is_same_v<T, family::Gaussian>) {
            return f.center.size() == rank;
          } else if constexpr (std::is_same_v<T, family::HarmonicPoly>) {
            return rank == 3;
          } else {
            return rank == 1;
          }
        },
        v_);
  }

  /// Univariate evaluation at a complex argument.
  cplx at(cplx s) const {
    return std::visit(
        [s](const auto& f) -> cplx {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, family::Polynomial>) {
            cplx acc = 0.0;
            for (auto c = f.coefficients.rbegin(); c != f.coefficients.rend(); ++c)
              acc = acc * s + *c;
            return acc;
          } else if constexpr (std::is_same_v<T, family::Gaussian>) {
            require(f.center.size() == 1,
                    "multivariate gaussian has no complex continuation");
            const cplx d = s - f.center[0];
            return std::exp(-d * d / (2.0 * f.width * f.width));
          } else if constexpr (std::is_same_v<T, family::DampedExponential>) {
            return f.amplitude * std::exp(-f.decay * s);
          } else if constexpr (std::is_same_v<T, family::RationalInverse>) {
            const cplx d = s - f.pole;
            if (std::abs(d) == 0.0)
              throw Error(ErrorKind::singular, "rational-inverse evaluated at its pole");
            return 1.0 / d;
          } else {
            throw Error(ErrorKind::invalid_argument,
                        "harmonic-poly is not a univariate family");
          }
        },
        v_);
  }

  /// d/ds of the univariate family at a complex argument.
  cplx derivative_at(cplx s) const {
    return std::visit(
        [this, s](const auto& f) -> cplx {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, family::Polynomial>) {
            cplx acc = 0.0;
            for (std::size_t k = f.coefficients.size(); k-- > 1;)
              acc = acc * s + static_cast<double>(k) * f.coefficients[k];
            return acc;
          } else if constexpr (std::is_same_v<T, family::Gaussian>) {
            return -(s - f.center.at(0)) / (f.width * f.width) * at(s);
          } else if constexpr (std::is_same_v<T, family::DampedExponential>) {
            return -f.decay * at(s);
          } else if constexpr (std::is_same_v<T, family::RationalInverse>) {
            const cplx v = at(s);
            return -v * v;
          } else {
            throw Error(ErrorKind::invalid_argument,
                        "harmonic-poly is not a univariate family");
          }
        },
        v_);
  }

  /// Evaluation at a real point of the family's arity.
  cplx operator()(std::span<const double> x) const {
    return std::visit(
        [this, x](const auto& f) -> cplx {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, family::Polynomial>) {
            double s = 0.0;
            if (f.argument.kind == family::PolyArgument::Kind::squared_norm) {
              for (double xi : x) s += xi * xi;
            } else {
              require(f.argument.index < x.size(),
                      "polynomial argument index exceeds point dimension");
              s = x[f.argument.index];
            }
            return at(s);
          } else if constexpr (std::is_same_v<T, family::Gaussian>) {
            require(x.size() == f.center.size(), "gaussian arity mismatch");
            double r2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double d = x[i] - f.center[i];
              r2 += d * d;
            }
            return std::exp(-r2 / (2.0 * f.width * f.width));
          } else if constexpr (std::is_same_v<T, family::HarmonicPoly>) {
            require(x.size() == 3, "harmonic-poly takes (x, y, z)");
            return detail::evaluate_monomials(f.terms, x[0], x[1], x[2]);
          } else {
            require(x.size() == 1, kind_name() + " takes a single coordinate");
            return at(x[0]);
          }
        },
        v_);
  }

 private:
  explicit AnalyticFamily(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// ---------------------------------------------------------------------------
// Operations

inline ScalarField sample_analytic(const AnalyticFamily& fam, const GridSpec& grid) {
  require(fam.accepts_rank(grid.rank()),
          fam.kind_name() + " family does not accept a grid with " +
              std::to_string(grid.rank()) + " axes");
  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const GridPoint p = grid.point(i);
    cplx v;
    try {
      v = fam(std::span<const double>(p.data(), grid.rank()));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singular) throw;
      v = cplx(INFINITY, 0.0);
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::singular,
                  "singular sample of " + fam.kind_name() + " at node " +
                      grid.describe_node(i));
    values[i] = v;
  });
  return ScalarField(grid, std::move(values));
}

/// Restricts a field to the hyperplane axis = coordinate(index).
inline ScalarField field_slice(const ScalarField& field, std::string_view axis_name,
                               std::size_t index) {
  const GridSpec& g = field.grid();
  require(g.rank() >= 2, "cannot slice a field with fewer than 2 axes");
  const std::size_t a = g.axis_index(axis_name);
  require(index < g.axis(a).points,
          "slice index " + std::to_string(index) + " out of range for axis '" +
              std::string(axis_name) + "'");
  std::vector<Axis> kept;
  for (std::size_t b = 0; b < g.rank(); ++b)
    if (b != a) kept.push_back(g.axis(b));
  GridSpec sub(std::move(kept));
  std::vector<cplx> values(sub.size());
  const std::size_t outer = g.size() / (g.stride(a) * g.axis(a).points);
  const std::size_t inner = g.stride(a);
  std::size_t k = 0;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i)
      values[k++] = field[o * g.axis(a).points * inner + index * inner + i];
  return ScalarField(std::move(sub), std::move(values));
}

}  // namespace pwd

#endif  // PWD_FIELDS_HPP
